#include "elac/chain.hpp"

#include <cmath>
#include <numbers>

namespace elac {

PlaneVector end_tangent(const Segment& seg) {
    const double rho = standard_radius(seg, seg.param_at(1.0));
    if (rho == 0.0 || !std::isfinite(rho)) throw SingularCurvature("segment ends at a singular point");
    const auto s = evaluate_segment(seg, 1.0);
    return seg.transform.scale * std::abs(rho) * s.tangent;
}

namespace {

// Arc length coordinate along theta that keeps growing through the cusp of an alpha > 1 curve.
double unfolded_arc(const CurveParams& p, double theta) {
    const auto cusp = cusp_theta(p);
    if (!cusp || theta >= *cusp) return s_of_theta(p, theta);
    const double sb = s_of_theta(p, *cusp);
    return sb - (s_of_theta(p, 2.0 * *cusp - theta) - sb);
}

}  // namespace

double arc_length(const Segment& seg) {
    double len;
    if (seg.kind == ParamKind::arc) {
        len = std::abs(seg.end - seg.start);
    } else {
        len = std::abs(unfolded_arc(seg.params, seg.end) - unfolded_arc(seg.params, seg.start));
    }
    return seg.transform.scale * len;
}

Chain start_chain(const Segment& first, const StepInfo& info) {
    Chain c;
    c.segments.push_back(first);
    c.steps.push_back(info);
    return c;
}

Chain start_chain(const AlphaResult& first) {
    return start_chain(first.segment, {first.alpha, first.instance, first.iterations, first.length_residual});
}

namespace {

Joint joint_at_end(const Segment& seg, bool g2) {
    const auto s = evaluate_segment(seg, 1.0);
    return {s.point, end_tangent(seg), s.curvature, g2};
}

}  // namespace

Chain append_g2(const Chain& chain, PlanePoint c_next, PlaneVector v_c_dir_next, const AlphaConfig& cfg) {
    if (chain.segments.empty()) throw DomainError("cannot append to an empty chain");
    const Segment& prev = chain.segments.back();
    const Joint j = joint_at_end(prev, true);
    const HermiteProblem pr{prev.c, c_next, j.tangent, v_c_dir_next};
    const AlphaResult r = alpha_bisection(pr, norm(j.tangent), cfg);
    const double k_next = evaluate_segment(r.segment, 0.0).curvature;
    if (k_next * j.curvature < 0.0)
        throw CurvatureSignMismatch("the next segment turns the other way at the joint, so curvature cannot match");
    Chain out = chain;
    out.joints.push_back(j);
    out.segments.push_back(r.segment);
    out.steps.push_back({r.alpha, r.instance, r.iterations, r.length_residual});
    return out;
}

Chain append_g1(const Chain& chain, PlanePoint c_next, PlaneVector v_c_dir_next, double alpha,
                const SolverConfig& cfg) {
    if (chain.segments.empty()) throw DomainError("cannot append to an empty chain");
    const Segment& prev = chain.segments.back();
    const auto s = evaluate_segment(prev, 1.0);
    const HermiteProblem pr{prev.c, c_next, s.tangent, v_c_dir_next};
    Segment seg = solve_g1(pr, alpha, cfg);
    Chain out = chain;
    out.joints.push_back({s.point, s.tangent, s.curvature, false});
    out.steps.push_back({seg.params.alpha, instance_of(seg), 0, 0.0});
    out.segments.push_back(std::move(seg));
    return out;
}

namespace {

// d(phi)/ds at the first sample from three samples at chord offsets 0, h1, h1 + h2.
double one_sided_curvature(const Segment& seg, double t0, double dt) {
    const auto a = evaluate_segment(seg, t0);
    const auto b = evaluate_segment(seg, t0 + dt);
    const auto c = evaluate_segment(seg, t0 + 2.0 * dt);
    const double sign = dt > 0 ? 1.0 : -1.0;
    const double s1 = sign * distance(a.point, b.point);
    const double s2 = s1 + sign * distance(b.point, c.point);
    const double f0 = angle_of(a.tangent);
    const double f1 = f0 + std::remainder(angle_of(b.tangent) - f0, 2 * std::numbers::pi);
    const double f2 = f1 + std::remainder(angle_of(c.tangent) - f1, 2 * std::numbers::pi);
    // Derivative at 0 of the quadratic through (0, f0), (s1, f1), (s2, f2).
    const double d1 = (f1 - f0) / s1;
    const double d2 = (f2 - f0) / s2;
    return (d1 * s2 - d2 * s1) / (s2 - s1);
}

// Step in t that moves about 1e-5 of the segment's arc length away from t.
double fd_step(const Segment& seg, double t) {
    double speed = seg.transform.scale * std::abs(seg.end - seg.start);  // world length per unit t
    if (seg.kind == ParamKind::theta) speed *= std::abs(standard_radius(seg, seg.param_at(t)));
    const double dt = 1e-5 * arc_length(seg) / speed;
    return std::isfinite(dt) ? std::min(dt, 1e-2) : 1e-5;
}

// Near a cusp the curvature can change on a scale shorter than the first window, so the window
// is halved until two estimates agree; the last pair is Richardson-combined.
double refined_curvature(const Segment& seg, double t, double dt) {
    double prev = one_sided_curvature(seg, t, dt);
    for (int i = 0; i < 30; ++i) {
        dt *= 0.5;
        const double k = one_sided_curvature(seg, t, dt);
        const double diff = std::abs(k - prev);
        if (diff <= 1e-7 * std::abs(k)) return (4.0 * k - prev) / 3.0;
        prev = k;
    }
    return prev;
}

}  // namespace

ContinuityReport verify_continuity(const Chain& chain, const ContinuityTolerances& tol) {
    ContinuityReport rep;
    for (const auto& seg : chain.segments) rep.total_length += arc_length(seg);
    for (std::size_t i = 0; i + 1 < chain.segments.size(); ++i) {
        const Segment& l = chain.segments[i];
        const Segment& r = chain.segments[i + 1];
        const auto le = evaluate_segment(l, 1.0);
        const auto rs = evaluate_segment(r, 0.0);
        JointGap g;
        g.g2 = i < chain.joints.size() ? chain.joints[i].g2 : true;
        g.position = distance(le.point, rs.point);
        g.angle = angle_between(le.tangent, rs.tangent);
        g.k_left = refined_curvature(l, 1.0, -fd_step(l, 1.0));
        g.k_right = refined_curvature(r, 0.0, fd_step(r, 0.0));
        g.curvature = std::abs(g.k_left - g.k_right) / std::abs(g.k_left);
        const double span = std::max(1.0, distance(l.a, l.c));
        g.pass = g.position <= tol.position * span && g.angle <= tol.angle && (!g.g2 || g.curvature <= tol.curvature);
        rep.pass = rep.pass && g.pass;
        rep.joints.push_back(g);
    }
    return rep;
}

}  // namespace elac
