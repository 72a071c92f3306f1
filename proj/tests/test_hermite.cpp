#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "elac/hermite.hpp"
#include "synth.hpp"

using namespace elac;
using namespace elac::testing;
using std::numbers::pi;

namespace {

PlaneVector deg(double d) { return unit_from_angle(d * pi / 180.0); }

const HermiteProblem sixty_thirty{{0, 0}, {3, 0}, deg(60), deg(-30)};
const HermiteProblem quarter_circle{{0, 0}, {2, 0}, std::sqrt(2.0) * deg(45), deg(-45)};

double line_gap(PlaneVector a, PlaneVector b) {
    const double g = angle_between(a, b);
    return std::min(g, pi - g);
}

}  // namespace

TEST_CASE("build_triangle: 60/-30 configuration") {
    const auto tri = build_triangle(sixty_thirty);
    CHECK(tri.b.x == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(tri.b.y == doctest::Approx(0.75 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(tri.theta_delta == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK_FALSE(tri.swap_flag);
    CHECK(distance(tri.a, tri.b) == doctest::Approx(1.5));
    CHECK(tri.orientation == Orientation::cw);
    CHECK(tri.va_toward_b);
}

TEST_CASE("build_triangle: symmetric and degenerate inputs") {
    const auto tri = build_triangle(quarter_circle);
    CHECK(tri.b.x == doctest::Approx(1.0));
    CHECK(tri.b.y == doctest::Approx(1.0));
    CHECK(tri.isosceles);
    CHECK(tri.theta_delta == doctest::Approx(pi / 2));
    CHECK_THROWS_AS(build_triangle({{0, 0}, {3, 0}, deg(20), deg(20)}), ParallelTangents);
    CHECK_THROWS_AS(build_triangle({{0, 0}, {3, 0}, deg(20), deg(200)}), ParallelTangents);
    CHECK_THROWS_AS(build_triangle({{0, 0}, {0, 0}, deg(20), deg(60)}), DegenerateTriangle);
    // tangent at A runs straight through C
    CHECK_THROWS_AS(build_triangle({{0, 0}, {3, 0}, deg(0), deg(60)}), DegenerateTriangle);
    CHECK_THROWS_AS(build_triangle({{0, 0}, {3, 0}, {0, 0}, deg(60)}), DomainError);
}

TEST_CASE("build_triangle marks the swap when B is nearer C") {
    const auto tri = build_triangle({{0, 0}, {3, 0}, deg(30), deg(-60)});
    CHECK(tri.swap_flag);
    CHECK(tri.p1() == PlanePoint{3, 0});
}

TEST_CASE("standard_triangle: circle is isosceles") {
    for (double a : {-2.0, 0.5, 3.0}) {
        const auto st = standard_triangle({a, 0.0}, 1.1, ArcBranch::within);
        CHECK(distance(st.a, st.b) == doctest::Approx(distance(st.b, st.c)).epsilon(1e-13));
    }
}

TEST_CASE("standard_triangle: alpha=2 near the top of the extended range flips A' below the axis") {
    const double td = 1.0;
    const double top = 2.0 / (td * (2.0 - 1.0));
    const auto st = standard_triangle({2.0, 0.98 * top}, td, ArcBranch::within);
    CHECK(st.a.y < 0.0);
    CHECK(st.contains_cusp);
    CHECK(cross(st.b - st.a, st.c - st.b) < 0.0);
}

TEST_CASE("standard_triangle: alpha=-2 past the inflection moves B' left of the y axis") {
    const double td = 1.0;
    const double top = 1.0 / (td * 3.0);
    bool seen = false;
    for (int k = 1; k < 100 && !seen; ++k) {
        const auto st = standard_triangle({-2.0, top * (1 - k / 100.0)}, td, ArcBranch::beyond);
        CHECK(st.contains_inflection);
        seen = st.b.x < 0.0;
    }
    CHECK(seen);
}

TEST_CASE("lambda_bisection: isosceles gives Lambda = 0") {
    const auto r = lambda_bisection(0.7, build_triangle(quarter_circle));
    CHECK(r.converged);
    CHECK(r.lambda == 0.0);
}

TEST_CASE("lambda_bisection: alpha=-2, Lambda=0.17 round trip") {
    const auto s = synthesize({-2.0, 0.17}, 1.2, ArcBranch::within, false, {});
    REQUIRE(s);
    const auto r = lambda_bisection(-2.0, build_triangle(s->problem));
    CHECK(r.converged);
    CHECK(std::abs(r.lambda - 0.17) < 1e-8 * 0.17);
    CHECK(r.residual < 1e-12);
}

TEST_CASE("lambda_bisection: beyond the inflection needs the extension") {
    const double td = 1.2;
    const double top = 1.0 / (td * 3.0);
    const auto s = synthesize({-2.0, 0.95 * top}, td, ArcBranch::beyond, false, {});
    REQUIRE(s);
    const auto tri = build_triangle(s->problem);
    const auto ext = lambda_bisection(-2.0, tri);
    CHECK(ext.converged);
    CHECK(ext.beyond_inf_point);
    CHECK(ext.lambda == doctest::Approx(0.95 * top).epsilon(1e-9));

    SolverConfig plain;
    plain.extension = false;
    const auto r = lambda_bisection(-2.0, tri, plain);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(solve_g1(s->problem, -2.0, plain), NotFound);
    try {
        solve_g1(s->problem, -2.0, plain);
    } catch (const NotFound& e) {
        CHECK(e.lo <= e.hi);
    }
}

TEST_CASE("lambda_bisection: beyond the cusp for alpha > 1") {
    const double td = 0.9;
    const double l0 = 1.0 / (td * 1.5);
    const auto s = synthesize({2.5, 1.4 * l0}, td, ArcBranch::within, false, {});
    REQUIRE(s);
    const auto tri = build_triangle(s->problem);
    const auto r = lambda_bisection(2.5, tri);
    CHECK(r.converged);
    CHECK(r.lambda == doctest::Approx(1.4 * l0).epsilon(1e-9));
    SolverConfig plain;
    plain.extension = false;
    CHECK_FALSE(lambda_bisection(2.5, tri, plain).converged);
}

TEST_CASE("lambda_bisection: alpha=1 enlarges the interval") {
    const auto s = synthesize({1.0, 7.5}, 1.0, ArcBranch::within, false, {});
    REQUIRE(s);
    const auto r = lambda_bisection(1.0, build_triangle(s->problem));
    CHECK(r.converged);
    CHECK(r.lambda == doctest::Approx(7.5).epsilon(1e-10));
}

TEST_CASE("property: the bracket halves on every accepted step") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> U(0, 1);
    SolverConfig cfg;
    cfg.record_trace = true;
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        const double a = U(rng) < 0.5 ? -3 * U(rng) - 0.01 : 1.01 + 3 * U(rng);
        const double td = 0.3 + 2 * U(rng);
        const double top = a < 1 ? 1 / (td * (1 - a)) : 1 / (td * (a - 1));
        const auto s = synthesize({a, top * (0.05 + 0.9 * U(rng))}, td, ArcBranch::within, false, {});
        if (!s) continue;
        const auto r = lambda_bisection(a, build_triangle(s->problem), cfg);
        REQUIRE(r.trace.size() >= 2);
        for (std::size_t k = 1; k < r.trace.size(); ++k) {
            const double w0 = r.trace[k - 1].second - r.trace[k - 1].first;
            const double w1 = r.trace[k].second - r.trace[k].first;
            // midpoints round to the endpoint grid
            const double ulp = 4 * std::numeric_limits<double>::epsilon() * std::abs(r.trace[k - 1].second);
            CHECK(std::abs(w1 - 0.5 * w0) <= 1e-12 * w0 + ulp);
            CHECK(r.trace[k].first >= r.trace[k - 1].first);
            CHECK(r.trace[k].second <= r.trace[k - 1].second);
        }
        ++checked;
    }
    CHECK(checked > 30);
}

TEST_CASE("fit_transform: identity, scaled-rotated, and non-similar") {
    const CurveParams p{0.4, 0.6};
    const double td = 1.3;
    const auto st = standard_triangle(p, td, ArcBranch::within);
    const PlaneVector va = tangent_by_theta(p, 0.0);
    const PlaneVector vc = tangent_by_theta(p, td);
    const auto tri = build_triangle({st.a, st.c, va, vc});
    auto tf = fit_transform(tri, st);
    CHECK(tf.scale == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(tf.rotation) < 1e-14);
    CHECK_FALSE(tf.reflect);

    const Placement g{2.0, pi / 6, false, {5, -1}};
    const auto tri2 = build_triangle({g.map(st.a), g.map(st.c), g.map(va), g.map(vc)});
    tf = fit_transform(tri2, st);
    CHECK(tf.scale == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(tf.rotation == doctest::Approx(pi / 6).epsilon(1e-13));
    CHECK(distance(tf.apply(st.c), tri2.c) < 1e-12);

    const auto other = build_triangle({st.a, st.c, va, unit_from_angle(td + 0.1)});
    CHECK_THROWS_AS(fit_transform(other, st), NotSimilar);
}

TEST_CASE("fit_transform: mirrored placement sets reflect") {
    const CurveParams p{2.0, 0.3};
    const auto s = synthesize(p, 1.0, ArcBranch::within, false, {1.5, 0.3, true, {1, 1}});
    REQUIRE(s);
    const auto tri = build_triangle(s->problem);
    const auto st = standard_triangle(p, 1.0, ArcBranch::within);
    const auto tf = fit_transform(tri, st);
    CHECK(tf.reflect);
    CHECK(tf.scale == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("solve_g1: isosceles quarter turn is a circle of radius sqrt 2") {
    const auto seg = solve_g1(quarter_circle, -1.3);
    CHECK(seg.params.lambda == 0.0);
    CHECK(seg.transform.scale == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    const PlanePoint centre{1, -1};
    for (int k = 0; k <= 16; ++k) {
        const auto e = evaluate_segment(seg, k / 16.0);
        CHECK(std::abs(distance(e.point, centre) - std::sqrt(2.0)) < 1e-9 * std::sqrt(2.0));
        CHECK(e.curvature == doctest::Approx(-1 / std::sqrt(2.0)));
    }
}

TEST_CASE("solve_g1: S-shaped solve with v_A toward B has an inflection") {
    const HermiteProblem pr{{0, 0}, {3, 0}, deg(45), deg(-10)};
    const auto seg = solve_g1(pr, -3.4);
    CHECK_FALSE(seg.swap_flag);
    CHECK(seg.contains_inflection);
    CHECK_FALSE(seg.contains_cusp);
    const double k0 = evaluate_segment(seg, 0.0).curvature;
    const double k1 = evaluate_segment(seg, 1.0).curvature;
    CHECK(k0 * k1 < 0.0);
}

TEST_CASE("solve_g1: v_A away from B with alpha=1.66 has a cusp") {
    const HermiteProblem pr{{0, 0}, {3, 0}, -deg(45), deg(-10)};
    const auto seg = solve_g1(pr, 1.66);
    CHECK(seg.contains_cusp);
    CHECK_FALSE(seg.contains_inflection);
    CHECK(dot(evaluate_segment(seg, 0.0).tangent, pr.v_a) > 0.0);
}

TEST_CASE("solve_g1: curve leaving A the wrong way is reported") {
    // alpha < 1 cannot leave A away from B without swapping ends.
    const HermiteProblem pr{{0, 0}, {3, 0}, -deg(45), deg(-10)};
    CHECK_THROWS_AS(solve_g1(pr, 0.5), TangentSenseMismatch);
}

TEST_CASE("evaluate_segment: exact start and close end") {
    const auto seg = solve_g1(sixty_thirty, 0.3);
    CHECK(evaluate_segment(seg, 0.0).point == sixty_thirty.a);
    CHECK(distance(evaluate_segment(seg, 1.0).point, sixty_thirty.c) < 1e-11);
}

TEST_CASE("evaluate_segment: curvature sign follows the turn") {
    // 60/-30 turns clockwise
    const auto seg = solve_g1(sixty_thirty, 0.3);
    for (double t : {0.0, 0.5, 1.0}) CHECK(evaluate_segment(seg, t).curvature < 0.0);
    const HermiteProblem ccw{{0, 0}, {3, 0}, deg(-60), deg(30)};
    const auto seg2 = solve_g1(ccw, 0.3);
    for (double t : {0.0, 0.5, 1.0}) CHECK(evaluate_segment(seg2, t).curvature > 0.0);
}

TEST_CASE("property: G1 interpolation, scale identity, swap symmetry") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> U(0, 1), Ang(-pi, pi);
    int solved = 0;
    for (int i = 0; i < 150; ++i) {
        const PlanePoint a{10 * U(rng), 10 * U(rng)};
        const PlanePoint c = a + (1 + 5 * U(rng)) * unit_from_angle(Ang(rng));
        const HermiteProblem pr{a, c, (0.5 + U(rng)) * unit_from_angle(Ang(rng)), unit_from_angle(Ang(rng))};
        const double alpha = snap_alpha(-4 + 8 * U(rng));
        Segment seg;
        try {
            seg = solve_g1(pr, alpha);
        } catch (const TangentSenseMismatch&) {
            continue;
        } catch (const ParallelTangents&) {
            continue;
        } catch (const NotFound&) {
            continue;
        }
        ++solved;
        const double ac = distance(a, c);
        const auto s0 = evaluate_segment(seg, 0.0);
        const auto s1 = evaluate_segment(seg, 1.0);
        CHECK(s0.point == a);
        CHECK(distance(s1.point, c) < 1e-6 * ac);
        CHECK(angle_between(s0.tangent, pr.v_a) < 1e-6);
        CHECK(line_gap(s1.tangent, pr.v_c_dir) < 1e-6);

        const auto tri = build_triangle(pr);
        const auto st = standard_triangle(seg.params, tri.theta_delta,
                                          seg.contains_inflection ? ArcBranch::beyond : ArcBranch::within);
        CHECK(std::abs(seg.transform.scale * distance(st.a, st.c) - ac) <= 4e-16 * ac);

        // Mirrored problem: start at C heading back along the curve.
        const double len_c = seg.transform.scale * std::abs(standard_radius(seg, seg.param_at(1.0)));
        if (!(len_c > 1e-9) || !std::isfinite(len_c)) continue;
        const HermiteProblem mirror{c, a, -len_c * s1.tangent, pr.v_a};
        Segment back;
        try {
            back = solve_g1(mirror, alpha);
        } catch (const Error& e) {
            FAIL("mirrored problem failed: " << e.what());
            continue;
        }
        for (double t : {0.1, 0.35, 0.6, 0.9}) {
            const auto p = evaluate_segment(seg, t).point;
            const auto q = evaluate_segment(back, 1.0 - t).point;
            CHECK(distance(p, q) < 1e-9 * ac);
        }
    }
    CHECK(solved > 60);
}
