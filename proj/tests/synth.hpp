#pragma once

// Forward synthesis shared by the tests: pick (alpha, Lambda, theta_delta), build the standard
// triangle, push it through a random similarity, and return the world problem it solves.

#include <numbers>
#include <optional>
#include <random>

#include "elac/hermite.hpp"

namespace elac::testing {

struct Synth {
    HermiteProblem problem;
    CurveParams params;
    double theta_delta;
    bool beyond;
    bool swapped;
};

struct Placement {
    double scale = 1.0;
    double rotation = 0.0;
    bool reflect = false;
    PlaneVector shift;

    PlaneVector map(PlaneVector v) const {
        if (reflect) v.y = -v.y;
        const double c = std::cos(rotation), s = std::sin(rotation);
        return {scale * (c * v.x - s * v.y), scale * (s * v.x + c * v.y)};
    }
    PlanePoint map(PlanePoint p) const { return origin() + map(as_vector(p)) + shift; }
};

inline Placement random_placement(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> S(0.2, 20.0), R(-std::numbers::pi, std::numbers::pi), T(-50, 50);
    return {S(rng), R(rng), std::bernoulli_distribution(0.5)(rng), {T(rng), T(rng)}};
}

// Smallest Lambda of the principal beyond-inflection sheet for alpha < 0: scanning down from the
// inflection with the unwrapped signed angle of C' seen from A', the sheet ends where that angle
// leaves (0, theta_delta). Below it the curve winds further and the triangle can look normal again.
inline double beyond_sheet_floor(double alpha, double theta_delta, int steps = 400) {
    const double top = 1.0 / (theta_delta * (1.0 - alpha));
    double prev = 0.0;
    bool first = true;
    for (int k = 1; k < steps; ++k) {
        const double lam = top * (1.0 - double(k) / steps);
        const CurveParams p{alpha, lam};
        const PlanePoint c = point_by_arc(p, s_of_theta(p, theta_delta, ArcBranch::beyond));
        double g = std::atan2(c.y, c.x);
        if (!first) g = prev + std::remainder(g - prev, 2 * std::numbers::pi);
        first = false;
        if (!(g > 0.0 && g < theta_delta)) return top * (1.0 - double(k - 1) / steps);
        prev = g;
    }
    return 0.0;
}

// Returns nothing when the standard triangle is not in normal orientation (a configuration the
// curve cannot be fitted to as its own triangle).
inline std::optional<Synth> synthesize(const CurveParams& p, double theta_delta, ArcBranch branch, bool swapped,
                                       const Placement& g) {
    StandardTriangle st;
    try {
        st = standard_triangle(p, theta_delta, branch);
    } catch (const Error&) {
        return std::nullopt;
    }
    if (!(cross(st.b - st.a, st.c - st.b) > 0.0)) return std::nullopt;
    if (!(std::abs(st.angle_a + st.angle_c - theta_delta) <= 1e-9)) return std::nullopt;
    if (dot(st.b - st.a, st.t_a) <= 0.0 || dot(st.c - st.b, st.t_c) <= 0.0) return std::nullopt;

    // Forward velocity at A' along increasing parameter, by-theta speed |rho|.
    PlaneVector va;
    if (st.kind == ParamKind::arc) {
        va = tangent_by_arc(p, st.start);
    } else {
        va = tangent_by_theta(p, st.start);
    }
    PlaneVector vc = st.kind == ParamKind::arc ? tangent_by_arc(p, st.end) : tangent_by_theta(p, st.end);

    Synth out{{}, p, theta_delta, branch == ArcBranch::beyond, swapped};
    if (!swapped) {
        out.problem = {g.map(st.a), g.map(st.c), g.map(va), g.map(vc)};
    } else {
        // Travel C' -> A'. Direction sense at the far end selects the branch, not the travel.
        const bool inflection_side = st.contains_inflection;
        PlaneVector vc_dir = g.map(st.t_a);
        const PlaneVector to_b = g.map(st.b - st.a);
        if ((dot(vc_dir, to_b) > 0.0) == inflection_side) vc_dir = -vc_dir;
        out.problem = {g.map(st.c), g.map(st.a), -g.map(vc), vc_dir};
    }
    return out;
}

}  // namespace elac::testing
