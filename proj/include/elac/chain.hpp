#pragma once

#include <optional>
#include <vector>

#include "elac/alpha.hpp"

namespace elac {

struct Joint {
    PlanePoint point;
    PlaneVector tangent;  // incoming end tangent, length = world radius of curvature
    double curvature = 0.0;  // signed, world frame
    bool g2 = true;          // false for a fixed-alpha (G1) join
};

// Per-segment solve record kept alongside the geometry.
struct StepInfo {
    std::optional<double> alpha;
    Instance instance = Instance::plain;
    int alpha_iterations = 0;
    double length_residual = 0.0;
};

struct Chain {
    std::vector<Segment> segments;
    std::vector<StepInfo> steps;
    std::vector<Joint> joints;  // joints[i] sits between segments[i] and segments[i + 1]
};

// World tangent at t = 1 along the direction of travel, with length scale * |rho|.
PlaneVector end_tangent(const Segment& seg);

// World arc length, analytic in the standard frame.
double arc_length(const Segment& seg);

Chain start_chain(const Segment& first, const StepInfo& info = {});
Chain start_chain(const AlphaResult& first);

// Next segment from the chain's end point with the end tangent (direction and length) as v_A.
Chain append_g2(const Chain& chain, PlanePoint c_next, PlaneVector v_c_dir_next, const AlphaConfig& cfg = {});

// Fixed-alpha join: shares the end point and tangent direction only.
Chain append_g1(const Chain& chain, PlanePoint c_next, PlaneVector v_c_dir_next, double alpha,
                const SolverConfig& cfg = {});

struct ContinuityTolerances {
    double position = 1e-9;   // relative to max(1, |AC|) of the incoming segment
    double angle = 1e-6;      // rad
    double curvature = 1e-4;  // relative
};

struct JointGap {
    double position = 0.0;
    double angle = 0.0;
    double curvature = 0.0;  // |k_left - k_right| / |k_left|
    double k_left = 0.0;
    double k_right = 0.0;
    bool g2 = true;  // whether the curvature gap is held to tolerance
    bool pass = true;
};

struct ContinuityReport {
    std::vector<JointGap> joints;
    double total_length = 0.0;
    bool pass = true;
};

// Curvatures come from one-sided finite differences of the tangent angle against chord length,
// so a sign or scale error in the analytic curvature shows up here.
ContinuityReport verify_continuity(const Chain& chain, const ContinuityTolerances& tol = {});

}  // namespace elac
