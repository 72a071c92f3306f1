#include "elac/curve.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace elac {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// (1 + x)^e, accurate when x is small.
double pow1p(double x, double e) { return std::exp(e * std::log1p(x)); }

[[noreturn]] void domain(const std::string& what) { throw DomainError(what); }

bool circle(const CurveParams& p) { return p.lambda == 0.0; }

// rho(theta) without argument checks. Caller guarantees the base is representable.
double rho_theta_raw(const CurveParams& p, double theta) {
    if (circle(p)) return 1.0;
    if (p.alpha == 1.0) return std::exp(p.lambda * theta);
    const double x = (p.alpha - 1.0) * p.lambda * theta;
    if (1.0 + x > 0.0) return pow1p(x, 1.0 / (p.alpha - 1.0));
    // Only reachable for alpha > 1 (mirrored branch past the cusp) or at the bound itself.
    if (p.alpha > 1.0) return -std::pow(-(1.0 + x), 1.0 / (p.alpha - 1.0));
    return inf;
}

double theta_s_raw(const CurveParams& p, double s) {
    if (circle(p)) return s;
    const double L = p.lambda;
    if (p.alpha == 0.0) return -std::expm1(-L * s) / L;
    if (p.alpha == 1.0) return std::log1p(L * s) / L;
    const double y = p.alpha * L * s;
    const double e = 1.0 - 1.0 / p.alpha;
    if (1.0 + y >= 0.0) return std::expm1(e * std::log1p(y)) / (L * (p.alpha - 1.0));
    // alpha < 0 beyond the inflection: theta folds back symmetrically.
    return (std::pow(-(1.0 + y), e) - 1.0) / (L * (p.alpha - 1.0));
}

void check_theta(const CurveParams& p, double theta) {
    if (!std::isfinite(theta)) domain("theta must be finite");
    if (circle(p) || p.alpha >= 1.0) return;
    const double base = 1.0 + (p.alpha - 1.0) * p.lambda * theta;
    if (p.alpha < 0.0) {
        if (base < 0.0) domain("theta exceeds the upper bound b_theta");
    } else if (base <= 0.0) {
        domain("theta must stay below b_theta for 0 <= alpha < 1");
    }
}

void check_s(const CurveParams& p, double s) {
    if (!std::isfinite(s)) domain("s must be finite");
    if (circle(p) || p.alpha <= 0.0) return;
    const double base = 1.0 + p.alpha * p.lambda * s;
    if (p.alpha > 1.0) {
        if (base < 0.0) domain("s is below the lower bound b_s");
    } else if (base <= 0.0) {
        domain("s must stay above b_s for 0 < alpha <= 1");
    }
}

std::complex<double> cis(double phi) { return {std::cos(phi), std::sin(phi)}; }

PlaneVector integrate_theta(const CurveParams& p, double t0, double t1, const QuadratureConfig& q) {
    std::vector<double> splits;
    if (auto b = cusp_theta(p)) splits.push_back(*b);
    auto f = [&](double psi) { return rho_theta_raw(p, psi) * cis(psi); };
    return to_vector(integrate(f, t0, t1, q, splits).value);
}

PlaneVector integrate_arc(const CurveParams& p, double s0, double s1, const QuadratureConfig& q) {
    std::vector<double> splits;
    if (auto b = inflection_s(p)) splits.push_back(*b);
    // The cusp at b_s (alpha > 1) can only be an endpoint, never interior.
    auto f = [&](double u) { return cis(theta_s_raw(p, u)); };
    return to_vector(integrate(f, s0, s1, q, splits).value);
}

PlaneVector circle_chord(double t0, double t1) {
    return {std::sin(t1) - std::sin(t0), std::cos(t0) - std::cos(t1)};
}

}  // namespace

double snap_alpha(double alpha, double band) {
    auto snap_near = [band](double a, double centre) {
        const double d = a - centre;
        if (d == 0.0 || std::abs(d) >= band) return a;
        if (std::abs(d) < 0.5 * band) return centre;
        return centre + std::copysign(band, d);
    };
    return snap_near(snap_near(alpha, 0.0), 1.0);
}

CurveParams make_params(double alpha, double lambda, double band) {
    if (!std::isfinite(alpha)) domain("alpha must be finite");
    if (!std::isfinite(lambda) || lambda < 0.0) domain("lambda must be finite and non-negative");
    return {snap_alpha(alpha, band), lambda};
}

Bounds bounds(const CurveParams& p) {
    Bounds b;
    if (circle(p)) return b;
    if (p.alpha != 1.0)
        b.theta = Bound{1.0 / (p.lambda * (1.0 - p.alpha)), p.alpha < 1.0 ? BoundKind::upper : BoundKind::lower};
    // Like theta, s is reported unbounded at alpha = 1; the log1p domain is still guarded.
    if (p.alpha != 0.0 && p.alpha != 1.0)
        b.s = Bound{-1.0 / (p.lambda * p.alpha), p.alpha < 0.0 ? BoundKind::upper : BoundKind::lower};
    return b;
}

std::optional<double> cusp_theta(const CurveParams& p) {
    if (circle(p) || p.alpha <= 1.0) return std::nullopt;
    return 1.0 / (p.lambda * (1.0 - p.alpha));
}

std::optional<double> inflection_s(const CurveParams& p) {
    if (circle(p) || p.alpha >= 0.0) return std::nullopt;
    return -1.0 / (p.lambda * p.alpha);
}

SignedRadius rho_of_theta(const CurveParams& p, double theta) {
    check_theta(p, theta);
    return {rho_theta_raw(p, theta)};
}

SignedRadius rho_of_s(const CurveParams& p, double s) {
    check_s(p, s);
    if (circle(p)) return {1.0};
    const double L = p.lambda;
    if (p.alpha == 0.0) return {std::exp(L * s)};
    const double y = p.alpha * L * s;
    if (1.0 + y > 0.0) return {pow1p(y, 1.0 / p.alpha)};
    if (1.0 + y == 0.0) return {p.alpha < 0.0 ? -inf : 0.0};
    return {-std::pow(-(1.0 + y), 1.0 / p.alpha)};
}

double theta_of_s(const CurveParams& p, double s) {
    check_s(p, s);
    return theta_s_raw(p, s);
}

double s_of_theta(const CurveParams& p, double theta, ArcBranch branch) {
    if (!std::isfinite(theta)) domain("theta must be finite");
    if (circle(p)) return theta;
    const double L = p.lambda;
    const double a = p.alpha;
    if (a == 0.0) {
        if (theta * L >= 1.0) domain("theta must stay below b_theta for alpha = 0");
        return -std::log1p(-theta * L) / L;
    }
    if (a == 1.0) return std::expm1(theta * L) / L;
    const double x = (a - 1.0) * theta * L;
    if (1.0 + x < 0.0) {
        if (a > 1.0) domain("arc length is not defined past the cusp; address the point by theta");
        domain("theta exceeds the bound b_theta");
    }
    if (a > 0.0 && a < 1.0 && 1.0 + x == 0.0) domain("theta must stay below b_theta for 0 < alpha < 1");
    const double X = pow1p(x, a / (a - 1.0));
    if (a < 0.0 && branch == ArcBranch::beyond) return -(X + 1.0) / (a * L);
    return std::expm1(a / (a - 1.0) * std::log1p(x)) / (a * L);
}

PlaneVector chord_by_theta(const CurveParams& p, double theta0, double theta1, const QuadratureConfig& q) {
    check_theta(p, theta0);
    check_theta(p, theta1);
    if (circle(p)) return circle_chord(theta0, theta1);
    if (p.alpha < 0.0) return chord_by_arc(p, s_of_theta(p, theta0), s_of_theta(p, theta1), q);
    return integrate_theta(p, theta0, theta1, q);
}

PlaneVector chord_by_arc(const CurveParams& p, double s0, double s1, const QuadratureConfig& q) {
    check_s(p, s0);
    check_s(p, s1);
    if (circle(p)) return circle_chord(s0, s1);
    return integrate_arc(p, s0, s1, q);
}

PlanePoint point_by_theta(const CurveParams& p, double theta, const QuadratureConfig& q, ArcBranch branch) {
    if (!circle(p) && p.alpha < 0.0) return point_by_arc(p, s_of_theta(p, theta, branch), q);
    return origin() + chord_by_theta(p, 0.0, theta, q);
}

PlanePoint point_by_arc(const CurveParams& p, double s, const QuadratureConfig& q) {
    return origin() + chord_by_arc(p, 0.0, s, q);
}

PlaneVector tangent_by_theta(const CurveParams& p, double theta) {
    const double r = rho_of_theta(p, theta).value;
    return r * unit_from_angle(theta);
}

PlaneVector tangent_by_arc(const CurveParams& p, double s) { return unit_from_angle(theta_of_s(p, s)); }

double curvature_at_theta(const CurveParams& p, double theta) {
    const double r = rho_of_theta(p, theta).value;
    if (r == 0.0) throw SingularCurvature("curvature is unbounded at the cusp");
    return std::isinf(r) ? 0.0 : 1.0 / r;
}

double curvature_at_arc(const CurveParams& p, double s) {
    const double r = rho_of_s(p, s).value;
    if (r == 0.0) throw SingularCurvature("curvature is unbounded at the cusp");
    return std::isinf(r) ? 0.0 : 1.0 / r;
}

}  // namespace elac
