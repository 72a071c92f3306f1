#pragma once

#include <vector>

#include "elac/chain.hpp"

namespace elac {

struct SampleSpec {
    enum class Mode { count, chord } mode = Mode::count;
    int n = 64;               // count mode: n + 1 uniform parameters
    double chord_tol = 1e-3;  // chord mode: midpoint-to-chord bound
    QuadratureConfig quad;
};

struct Polyline {
    std::vector<double> ts;  // normalized segment parameters; for chains, segment index + t
    std::vector<PlanePoint> points;
};

// Cusp and inflection parameters strictly inside (0, 1).
std::vector<double> special_parameters(const Segment& seg);

Polyline sample_polyline(const Segment& seg, const SampleSpec& spec = {});

// Segments joined end to start; a joint appears once.
Polyline sample_polyline(const Chain& chain, const SampleSpec& spec = {});

// Largest distance of points from the polyline edge their parameter falls on.
double polyline_deviation(const Polyline& line, const std::vector<double>& ts, const std::vector<PlanePoint>& points);

}  // namespace elac
