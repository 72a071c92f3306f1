#pragma once

#include <limits>
#include <optional>

#include "elac/hermite.hpp"

namespace elac {

enum class Instance { plain, inflection, cusp };

const char* instance_name(Instance i);

// Open interval of first-tangent lengths. hi may be infinite.
struct LengthRange {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double l) const { return l > lo && l < hi; }
};

struct TangentLimits {
    double r_neg_inf = 0.0;  // touching circles reached as alpha -> -inf
    double r_pos_inf = 0.0;  // and as alpha -> +inf
    Instance instance = Instance::plain;
    LengthRange attainable;  // for the instance the problem selects; degenerate [r, r] for an isosceles triangle
};

TangentLimits tangent_length_limits(const HermiteProblem& problem);

// World length of the tangent at A in the tangent-angle parametrization, scale * |rho|.
double first_tangent_length(const Segment& seg);

// Same, negative when the curve leaves A away from B.
double signed_first_tangent_length(const Segment& seg);

Instance select_instance(const HermiteProblem& problem);
Instance select_instance(const TriangleData& tri);

// Branch a solved segment belongs to, whatever way it was solved.
Instance instance_of(const Segment& seg);

struct AlphaConfig {
    SolverConfig solver;
    double length_tol = 1e-4;  // relative
    double alpha_lo = -999.0;
    double alpha_hi = 999.0;
    double alpha_tol = 1e-10;
    int max_iteration = 200;
};

struct AlphaResult {
    std::optional<double> alpha;  // absent for the circle, where every alpha fits
    double lambda = 0.0;
    Segment segment;
    int iterations = 0;
    double length_residual = 0.0;  // relative
    Instance instance = Instance::plain;
};

AlphaResult alpha_bisection(const HermiteProblem& problem, double target_length, const AlphaConfig& cfg = {});

}  // namespace elac
