#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "elac/hermite.hpp"

namespace elac {

// World points of a segment at normalized parameters ts (ascending, inside [0, 1]).
// The parallel version integrates the panels between neighbouring samples concurrently and
// prefix-sums them from A; the serial one integrates every point from the reference point.
std::vector<PlanePoint> sample_segment_parallel(const Segment& seg, std::span<const double> ts,
                                                const QuadratureConfig& q = {});
std::vector<PlanePoint> sample_segment_serial(const Segment& seg, std::span<const double> ts,
                                              const QuadratureConfig& q = {});

struct BatchItem {
    HermiteProblem problem;
    double alpha = 0.0;
};

struct BatchOutcome {
    std::optional<Segment> segment;
    std::optional<ErrorKind> error;
    std::string message;
};

std::vector<BatchOutcome> solve_batch_parallel(std::span<const BatchItem> items, const SolverConfig& cfg = {});
std::vector<BatchOutcome> solve_batch_serial(std::span<const BatchItem> items, const SolverConfig& cfg = {});

int kernel_threads();

}  // namespace elac
