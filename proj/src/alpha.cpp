#include "elac/alpha.hpp"

#include <cmath>

namespace elac {

const char* instance_name(Instance i) {
    switch (i) {
        case Instance::inflection: return "inflection";
        case Instance::cusp: return "cusp";
        case Instance::plain: break;
    }
    return "plain";
}

namespace {

// Positive root of (4 - |E|^2) r^2 - 2 (D.E) r - |D|^2 = 0, i.e. |D + r E| = 2r.
double touching_radius(PlaneVector d, PlaneVector e) {
    const double a = 4.0 - dot(e, e);
    const double b = -2.0 * dot(d, e);
    const double c = -dot(d, d);
    if (std::abs(a) <= 1e-14) {
        if (!(b > 0.0)) throw NoPositiveRoot("touching circles have no positive radius");
        return -c / b;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) throw NoPositiveRoot("touching circles have no real radius");
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    const double r1 = q / a;
    const double r2 = q != 0.0 ? c / q : r1;
    const double r = std::max(r1, r2);
    if (!(r > 0.0) || !std::isfinite(r)) throw NoPositiveRoot("touching circles have no positive radius");
    return r;
}

LengthRange attainable_for(const TriangleData& tri, Instance inst, double r_neg, double r_pos) {
    if (inst == Instance::plain) {
        const double r = distance(tri.a, tri.b) / std::tan(0.5 * tri.theta_delta);
        return {r, r};
    }
    const double r = inst == Instance::inflection ? r_neg : r_pos;
    if (tri.swap_flag) return {r, std::numeric_limits<double>::infinity()};
    return {0.0, r};
}

}  // namespace

Instance select_instance(const TriangleData& tri) {
    if (tri.isosceles) return Instance::plain;
    if (!tri.swap_flag) return tri.va_toward_b ? Instance::inflection : Instance::cusp;
    return tri.vc_toward_b ? Instance::cusp : Instance::inflection;
}

Instance select_instance(const HermiteProblem& problem) { return select_instance(build_triangle(problem)); }

TangentLimits tangent_length_limits(const HermiteProblem& problem) {
    const TriangleData tri = build_triangle(problem);
    const PlanePoint p1 = tri.p1();
    const PlanePoint p3 = tri.p3();
    const PlaneVector t1 = normalized(tri.b - p1);
    const PlaneVector t3 = normalized(p3 - tri.b);
    const double sigma = cross(t1, t3) > 0.0 ? 1.0 : -1.0;
    // alpha -> -inf: P1 sits on a circle on the turning side, P3 on the touching circle past the inflection.
    const PlaneVector n1 = sigma * left_normal(t1);
    const PlaneVector n3 = -sigma * left_normal(t3);
    const PlaneVector d = p3 - p1;
    TangentLimits out;
    out.r_neg_inf = touching_radius(d, n3 - n1);
    out.r_pos_inf = touching_radius(d, n1 - n3);
    out.instance = select_instance(tri);
    out.attainable = attainable_for(tri, out.instance, out.r_neg_inf, out.r_pos_inf);
    return out;
}

double signed_first_tangent_length(const Segment& seg) {
    const double rho = standard_radius(seg, seg.param_at(0.0));
    if (seg.swap_flag) return seg.transform.scale * std::abs(rho);
    return seg.transform.scale * rho;
}

Instance instance_of(const Segment& seg) {
    if (seg.params.lambda == 0.0) return Instance::plain;
    if (seg.swap_flag) return seg.contains_inflection ? Instance::inflection : Instance::cusp;
    return signed_first_tangent_length(seg) > 0.0 ? Instance::inflection : Instance::cusp;
}

double first_tangent_length(const Segment& seg) { return std::abs(signed_first_tangent_length(seg)); }

namespace {

struct Probe {
    Segment seg;
    double length;  // signed for the no-swap case, plain length when swapped
};

double band_clear(double a, const AlphaConfig& cfg) { return snap_alpha(a, cfg.solver.alpha_band); }

}  // namespace

AlphaResult alpha_bisection(const HermiteProblem& problem, double target_length, const AlphaConfig& cfg) {
    if (!(target_length > 0.0) || !std::isfinite(target_length))
        throw DomainError("target tangent length must be positive and finite");
    const TriangleData tri = build_triangle(problem);
    const TangentLimits lim = tangent_length_limits(problem);
    const LengthRange range = lim.attainable;

    AlphaResult out;
    out.instance = lim.instance;

    if (tri.isosceles) {
        const double r = range.lo;
        const double rel = std::abs(target_length - r) / r;
        if (!(rel < cfg.length_tol)) throw Unreachable("an isosceles triangle only admits its circle", r, r);
        out.segment = circular_arc(tri, 0.0);
        if (dot(evaluate_segment(out.segment, 0.0).tangent, problem.v_a) < 0.0)
            throw TangentSenseMismatch("the circle leaves A opposite to v_A");
        out.length_residual = rel;
        return out;
    }
    if (tri.swap_flag && !tri.va_toward_b)
        throw TangentSenseMismatch("with B nearer C the curve always leaves A toward B");
    if (!range.contains(target_length))
        throw Unreachable("tangent length is outside the attainable range", range.lo, range.hi);

    const double target = (!tri.swap_flag && !tri.va_toward_b) ? -target_length : target_length;
    const bool inflection = lim.instance == Instance::inflection;

    auto probe = [&](double a) -> Probe {
        Segment seg = solve_triangle(tri, a, cfg.solver);
        const double l = signed_first_tangent_length(seg);
        return {std::move(seg), l};
    };

    double lo = cfg.alpha_lo;
    double hi = cfg.alpha_hi;
    std::optional<Probe> best;
    double best_res = INFINITY;
    auto consider = [&](double a, Probe&& p) {
        const double res = std::abs(p.length - target) / target_length;
        if (res < best_res) {
            best_res = res;
            best = std::move(p);
            out.alpha = a;
        }
        return res;
    };

    int it = 0;
    for (; it < cfg.max_iteration; ++it) {
        // A probe that fails to solve is retried at other split points, nearest the middle first; any
        // point inside the bracket keeps the bisection valid. Thin triangles can leave a wide band of
        // alpha with no Lambda at all next to a narrow solvable one, hence the full scan.
        std::optional<Probe> got;
        double mid = 0.0;
        for (int k = 0; k < 63 && !got; ++k) {
            const double f = (k % 2 ? 1 : -1) * ((k + 1) / 2) / 64.0;
            mid = band_clear(0.5 * (lo + hi) + f * (hi - lo), cfg);
            if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi) + f * (hi - lo);
            if (!(mid > lo && mid < hi)) continue;
            try {
                got = probe(mid);
            } catch (const NotFound&) {
            } catch (const QuadratureError&) {
            } catch (const NotSimilar&) {
            }
        }
        if (!got) {
            if (hi - lo < cfg.alpha_tol || !(0.5 * (lo + hi) > lo && 0.5 * (lo + hi) < hi)) break;
            throw NotFound("no alpha probe inside the bracket could be solved", lo, hi);
        }
        Probe p = std::move(*got);
        const bool beyond = p.seg.contains_inflection;
        const double length = p.length;
        bool go_up;  // true: the root lies above mid
        if (!tri.swap_flag) {
            // Signed length falls as alpha grows.
            go_up = length > target;
        } else if (inflection) {
            // Only probes with A past the inflection belong to this instance; there length grows with alpha.
            go_up = beyond && length < target;
        } else {
            // Cusp instance: skip probes past the inflection, then length falls with alpha.
            go_up = beyond || length > target;
        }
        const bool own = !tri.swap_flag || (inflection == beyond);
        const double res = own ? consider(mid, std::move(p)) : INFINITY;
        (go_up ? lo : hi) = mid;
        if (res < 1e-13 || hi - lo < cfg.alpha_tol) {
            ++it;
            break;
        }
    }
    out.iterations = it;
    if (!best || !(best_res < cfg.length_tol)) {
        throw NotFound("alpha bisection did not match the tangent length", lo, hi);
    }
    out.segment = std::move(best->seg);
    out.lambda = out.segment.params.lambda;
    out.alpha = out.segment.params.alpha;
    out.length_residual = best_res;
    return out;
}

}  // namespace elac
