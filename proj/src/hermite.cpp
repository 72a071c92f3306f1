#include "elac/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace elac {

namespace {

using std::numbers::pi;

double wrap_angle(double a) {
    a = std::remainder(a, 2.0 * pi);
    return a == -pi ? pi : a;
}

StandardTriangle finish_triangle(StandardTriangle st) {
    const double den = cross(st.t_a, st.t_c);
    const double u = cross(st.c - st.a, st.t_c) / den;
    st.b = st.a + u * st.t_a;
    st.angle_a = angle_between(st.b - st.a, st.c - st.a);
    st.angle_c = angle_between(st.b - st.c, st.a - st.c);
    return st;
}

// alpha < 0: C' addressed directly by arc length.
StandardTriangle triangle_at_arc(const CurveParams& p, double theta_delta, double s_c, const QuadratureConfig& q) {
    StandardTriangle st;
    st.kind = ParamKind::arc;
    st.start = 0.0;
    st.end = s_c;
    st.a = origin();
    st.c = point_by_arc(p, s_c, q);
    st.t_a = {1.0, 0.0};
    st.t_c = unit_from_angle(theta_delta);
    if (auto b = inflection_s(p)) st.contains_inflection = s_c > *b;
    return finish_triangle(st);
}

struct Probe {
    int cmp;  // +1: gamma above target (Lambda too large on the monotone families)
    double residual;
    bool flipped;
};

class LambdaSearch {
public:
    LambdaSearch(double alpha, const TriangleData& tri, const SolverConfig& cfg)
        : alpha_(alpha), tri_(tri), cfg_(cfg) {
        compare_first_ = (alpha <= 1.0 && !tri.swap_flag) || (alpha >= 1.0 && tri.swap_flag);
        target_ = compare_first_ ? tri.angle_p1 : tri.angle_p3;
    }

    Probe judge(const StandardTriangle& st) const {
        bool flipped = false;
        if (alpha_ > 1.0) flipped = st.a.y < 0.0;
        else if (alpha_ < 0.0) flipped = st.b.x < 0.0;
        const double u = compare_first_ ? st.angle_a : st.angle_c;
        const double diff = compare_first_ ? u - target_ : target_ - u;
        if (flipped) return {+1, std::abs(u - target_), true};
        return {diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0), std::abs(u - target_), false};
    }

    Probe probe(double lambda, ArcBranch branch) const {
        const CurveParams p{alpha_, lambda};
        try {
            return judge(standard_triangle(p, tri_.theta_delta, branch, cfg_.quad));
        } catch (const Error& e) {
            // Near the top of the range for 0 <= alpha < 1 (and at the inflection for alpha < 0)
            // C' is at or past what double precision can address; gamma is at its supremum there.
            if (alpha_ < 1.0 && (e.kind() == ErrorKind::quadrature || e.kind() == ErrorKind::domain))
                return {+1, INFINITY, false};
            throw;
        }
    }

    Probe probe_inflection(double lambda) const {
        const CurveParams p{alpha_, lambda};
        return judge(triangle_at_arc(p, tri_.theta_delta, *inflection_s(p), cfg_.quad));
    }

private:
    double alpha_;
    const TriangleData& tri_;
    const SolverConfig& cfg_;
    bool compare_first_ = true;
    double target_ = 0.0;
};

}  // namespace

TriangleData build_triangle(const HermiteProblem& problem) {
    const double la = norm(problem.v_a);
    const double lc = norm(problem.v_c_dir);
    if (!(la > 0.0) || !(lc > 0.0) || !std::isfinite(la) || !std::isfinite(lc))
        throw DomainError("tangent vectors must be finite and non-zero");
    const PlaneVector chord = problem.c - problem.a;
    const double span = norm(chord);
    if (!(span > 0.0)) throw DegenerateTriangle("A and C coincide");
    const PlaneVector ua = problem.v_a / la;
    const PlaneVector uc = problem.v_c_dir / lc;
    const double den = cross(ua, uc);
    if (std::abs(den) < 1e-12) throw ParallelTangents("tangent at A is parallel to the tangent direction at C");
    const double t = cross(chord, uc) / den;  // B = A + t ua
    const double u = cross(chord, ua) / den;  // B = C + u uc
    if (std::abs(t) < 1e-12 * span || std::abs(u) < 1e-12 * span)
        throw DegenerateTriangle("tangent-line intersection B coincides with an endpoint");

    TriangleData tri;
    tri.a = problem.a;
    tri.c = problem.c;
    tri.b = problem.a + t * ua;
    tri.va_toward_b = t > 0.0;
    tri.vc_toward_b = u > 0.0;
    const double ab = std::abs(t);
    const double bc = std::abs(u);
    tri.swap_flag = ab > bc;
    tri.isosceles = std::abs(ab - bc) <= 1e-12 * std::max(ab, bc);
    tri.theta_delta = pi - angle_between(tri.a - tri.b, tri.c - tri.b);
    tri.orientation = cross(tri.b - tri.a, tri.c - tri.b) > 0.0 ? Orientation::ccw : Orientation::cw;
    const PlanePoint p1 = tri.p1();
    const PlanePoint p3 = tri.p3();
    tri.angle_p1 = angle_between(tri.b - p1, p3 - p1);
    tri.angle_p3 = angle_between(tri.b - p3, p1 - p3);
    tri.reflect = cross(tri.b - p1, p3 - tri.b) < 0.0;
    return tri;
}

StandardTriangle standard_triangle(const CurveParams& p, double theta_delta, ArcBranch branch,
                                   const QuadratureConfig& q) {
    if (!(theta_delta > 0.0 && theta_delta < pi)) throw DomainError("theta_delta must lie in (0, pi)");
    if (p.lambda > 0.0 && p.alpha < 0.0) return triangle_at_arc(p, theta_delta, s_of_theta(p, theta_delta, branch), q);
    StandardTriangle st;
    st.kind = ParamKind::theta;
    if (p.alpha > 1.0) {
        st.start = -theta_delta;
        st.end = 0.0;
        st.a = point_by_theta(p, -theta_delta, q);
        st.c = origin();
        if (auto b = cusp_theta(p)) st.contains_cusp = *b > -theta_delta;
    } else {
        st.start = 0.0;
        st.end = theta_delta;
        st.a = origin();
        st.c = point_by_theta(p, theta_delta, q);
    }
    st.t_a = unit_from_angle(st.start);
    st.t_c = unit_from_angle(st.end);
    return finish_triangle(st);
}

LambdaResult lambda_bisection(double alpha_in, const TriangleData& tri, const SolverConfig& cfg) {
    const double alpha = snap_alpha(alpha_in, cfg.alpha_band);
    LambdaResult res;
    if (tri.isosceles) {
        res.converged = true;
        return res;
    }
    const double td = tri.theta_delta;
    const LambdaSearch search(alpha, tri, cfg);

    double lo = 0.0;
    double hi;
    bool enlarge = false;
    if (alpha == 1.0) {
        hi = 1.0;
        enlarge = true;
    } else if (alpha < 1.0) {
        hi = 1.0 / (td * (1.0 - alpha));
    } else {
        hi = (cfg.extension ? 2.0 : 1.0) / (td * (alpha - 1.0));
    }

    if (alpha < 0.0 && cfg.extension) res.beyond_inf_point = search.probe_inflection(hi).cmp < 0;
    const ArcBranch branch = res.beyond_inf_point ? ArcBranch::beyond : ArcBranch::within;

    if (res.beyond_inf_point) {
        // Past the inflection gamma falls as Lambda grows, but wraps for small Lambda, so bracket
        // the first crossing by walking down from the inflection instead of bisecting (0, hi).
        const double top = hi;
        double prev = top;
        bool found = false;
        auto try_step = [&](double d) {
            const double lam = top - d;
            if (!(lam > 0.0)) return false;
            if (search.probe(lam, branch).cmp >= 0) {
                lo = lam;
                hi = prev;
                found = true;
                return true;
            }
            prev = lam;
            return false;
        };
        for (int k = 40; k >= 6 && !found; --k) try_step(std::ldexp(top, -k));
        for (int j = 2; j < 64 && !found; ++j) try_step(top * j / 64.0);
        if (!found) {
            res.bracket_lo = 0.0;
            res.bracket_hi = top;
            res.lambda = prev;
            res.residual = search.probe(prev, branch).residual;
            return res;
        }
    }

    double mid = lo + 0.5 * (hi - lo);
    for (res.iterations = 0; res.iterations < cfg.max_iteration;) {
        mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        if (cfg.record_trace) res.trace.emplace_back(lo, hi);
        ++res.iterations;
        const Probe pr = search.probe(mid, branch);
        if (pr.cmp == 0) {
            lo = hi = mid;
            break;
        }
        // On the beyond branch gamma decreases with Lambda, so the selection is reversed.
        const bool go_down = res.beyond_inf_point ? pr.cmp < 0 : pr.cmp > 0;
        if (go_down) {
            hi = mid;
            enlarge = false;
        } else {
            lo = mid;
            if (enlarge) hi *= 10.0;
        }
    }
    res.lambda = lo == hi ? lo : lo + 0.5 * (hi - lo);
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    const Probe last = search.probe(res.lambda, branch);
    res.residual = last.residual;
    // Once the bracket is down to neighbouring doubles the residual is quadrature noise; accept it
    // if the fit would still pass the similarity check.
    const double m = lo + 0.5 * (hi - lo);
    const bool collapsed = lo == hi || !(m > lo && m < hi);
    res.converged = !last.flipped && (last.residual < cfg.eps_angle || (collapsed && last.residual < cfg.similarity_tol));
    return res;
}

PlaneVector SimilarityTransform::apply(PlaneVector v) const {
    if (reflect) v.y = -v.y;
    const double c = std::cos(rotation);
    const double s = std::sin(rotation);
    return {scale * (c * v.x - s * v.y), scale * (s * v.x + c * v.y)};
}

PlanePoint SimilarityTransform::apply(PlanePoint p) const { return anchor + apply(p - pivot); }

SimilarityTransform fit_transform(const TriangleData& tri, const StandardTriangle& st, double tol) {
    if (!(cross(st.b - st.a, st.c - st.b) > 0.0))
        throw NotSimilar("standard triangle is not counterclockwise", INFINITY);
    const double residual = std::max(std::abs(st.angle_a - tri.angle_p1), std::abs(st.angle_c - tri.angle_p3));
    if (!(residual <= tol)) throw NotSimilar("triangles are not similar", residual);
    SimilarityTransform tf;
    tf.reflect = tri.reflect;
    PlaneVector d_std = st.c - st.a;
    const PlaneVector d_world = tri.p3() - tri.p1();
    tf.scale = norm(d_world) / norm(d_std);
    if (tf.reflect) d_std.y = -d_std.y;
    tf.rotation = wrap_angle(angle_of(d_world) - angle_of(d_std));
    tf.pivot = tri.swap_flag ? st.c : st.a;
    tf.anchor = tri.a;
    return tf;
}

double Segment::param_at(double t) const {
    const double u = swap_flag ? 1.0 - t : t;
    if (u == 0.0) return start;
    if (u == 1.0) return end;
    return start + u * (end - start);
}

namespace {

Segment make_segment(const TriangleData& tri, const CurveParams& p, const StandardTriangle& st,
                     const SimilarityTransform& tf) {
    Segment seg;
    seg.params = p;
    seg.kind = st.kind;
    seg.start = st.start;
    seg.end = st.end;
    if (st.kind == ParamKind::arc) {
        seg.theta_start = theta_of_s(p, st.start);
        seg.theta_end = theta_of_s(p, st.end);
    } else {
        seg.theta_start = st.start;
        seg.theta_end = st.end;
    }
    seg.transform = tf;
    seg.swap_flag = tri.swap_flag;
    seg.contains_cusp = st.contains_cusp;
    seg.contains_inflection = st.contains_inflection;
    seg.a = tri.a;
    seg.c = tri.c;
    return seg;
}

void check_sense(const Segment& seg, const HermiteProblem& problem) {
    const auto s0 = evaluate_segment(seg, 0.0);
    if (dot(s0.tangent, problem.v_a) < 0.0)
        throw TangentSenseMismatch("for this alpha the curve leaves A opposite to v_A");
}

}  // namespace

Segment circular_arc(const TriangleData& tri, double alpha) {
    const CurveParams p{alpha, 0.0};
    const auto st = standard_triangle(p, tri.theta_delta, ArcBranch::within);
    return make_segment(tri, p, st, fit_transform(tri, st));
}

Segment solve_triangle(const TriangleData& tri, double alpha_in, const SolverConfig& cfg) {
    if (!std::isfinite(alpha_in)) throw DomainError("alpha must be finite");
    const double alpha = snap_alpha(alpha_in, cfg.alpha_band);
    if (tri.isosceles) return circular_arc(tri, alpha);
    const LambdaResult lr = lambda_bisection(alpha, tri, cfg);
    if (!lr.converged) throw NotFound("Lambda bisection did not converge", lr.bracket_lo, lr.bracket_hi);
    const CurveParams p{alpha, lr.lambda};
    const auto branch = lr.beyond_inf_point ? ArcBranch::beyond : ArcBranch::within;
    const auto st = standard_triangle(p, tri.theta_delta, branch, cfg.quad);
    Segment seg = make_segment(tri, p, st, fit_transform(tri, st, cfg.similarity_tol));
    seg.lambda_residual = lr.residual;
    seg.lambda_iterations = lr.iterations;
    return seg;
}

Segment solve_g1(const HermiteProblem& problem, double alpha, const SolverConfig& cfg) {
    if (!std::isfinite(alpha)) throw DomainError("alpha must be finite");
    Segment seg = solve_triangle(build_triangle(problem), alpha, cfg);
    check_sense(seg, problem);
    return seg;
}

PlaneVector standard_velocity(const Segment& seg, double param) {
    if (seg.kind == ParamKind::arc) return tangent_by_arc(seg.params, param);
    return tangent_by_theta(seg.params, param);
}

double standard_radius(const Segment& seg, double param) {
    if (seg.kind == ParamKind::arc) return rho_of_s(seg.params, param).value;
    return rho_of_theta(seg.params, param).value;
}

double world_curvature_sign(const Segment& seg) {
    return (seg.transform.reflect ? -1.0 : 1.0) * (seg.swap_flag ? -1.0 : 1.0);
}

SegmentSample evaluate_segment(const Segment& seg, double t, const QuadratureConfig& q) {
    const double param = seg.param_at(t);
    const PlanePoint sp =
        seg.kind == ParamKind::arc ? point_by_arc(seg.params, param, q) : point_by_theta(seg.params, param, q);
    SegmentSample out;
    out.point = seg.transform.apply(sp);

    PlaneVector v = standard_velocity(seg, param);
    double k;
    if (seg.kind == ParamKind::arc) {
        const double r = standard_radius(seg, param);
        k = std::isinf(r) ? 0.0 : 1.0 / r;
    } else {
        const double r = standard_radius(seg, param);
        // At the cusp itself report the outgoing direction.
        if (r == 0.0) v = unit_from_angle(param);
        k = 1.0 / std::abs(r);
    }
    const double dir = seg.swap_flag ? -1.0 : 1.0;
    out.tangent = dir * normalized(seg.transform.apply(v));
    out.curvature = k / seg.transform.scale * world_curvature_sign(seg);
    return out;
}

}  // namespace elac
