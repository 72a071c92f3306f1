#include "elac/harness.hpp"

#include <cmath>
#include <numbers>

namespace elac {

std::optional<Chain> random_g2_chain(std::mt19937_64& rng, int segments, const AlphaConfig& cfg) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const double deg = std::numbers::pi / 180.0;
    const double da = (20 + 70 * U(rng)) * deg, dc = -(10 + 60 * U(rng)) * deg;
    const double alpha = -3 + 6 * U(rng);
    try {
        Chain chain = start_chain(solve_g1({{0, 0}, {3, 0}, unit_from_angle(da), unit_from_angle(dc)}, alpha, cfg.solver));
        for (int i = 1; i < segments; ++i) {
            const Segment& last = chain.segments.back();
            const double phi = angle_of(end_tangent(last));
            const double k = evaluate_segment(last, 1.0).curvature;
            const double turn = std::copysign(0.2 + 0.8 * U(rng), k);
            const double frac = U(rng) < 0.5 ? 0.25 + 0.2 * U(rng) : 0.55 + 0.2 * U(rng);
            const PlanePoint c = last.c + (1 + 3 * U(rng)) * unit_from_angle(phi + turn * frac);
            chain = append_g2(chain, c, unit_from_angle(phi + turn), cfg);
        }
        return chain;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace elac
