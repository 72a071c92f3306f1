#pragma once

#include <optional>

#include "elac/geometry.hpp"
#include "elac/quadrature.hpp"

namespace elac {

inline constexpr double default_alpha_band = 1e-4;

struct CurveParams {
    double alpha = 0.0;
    double lambda = 0.0;
    friend bool operator==(const CurveParams&, const CurveParams&) = default;
};

// Moves alpha out of the open bands around 0 and 1 to the nearest band edge.
double snap_alpha(double alpha, double band = default_alpha_band);

// Validated constructor: finite alpha (snapped), finite lambda >= 0.
CurveParams make_params(double alpha, double lambda, double band = default_alpha_band);

enum class BoundKind { upper, lower };

struct Bound {
    double value;
    BoundKind kind;
};

struct Bounds {
    std::optional<Bound> theta;
    std::optional<Bound> s;
};

struct SignedRadius {
    double value;
};

// Which arc-length pre-image of a tangential angle to take when alpha < 0.
enum class ArcBranch { within, beyond };

Bounds bounds(const CurveParams& p);

// Negative past the cusp (alpha > 1) or the inflection (alpha < 0).
SignedRadius rho_of_theta(const CurveParams& p, double theta);
SignedRadius rho_of_s(const CurveParams& p, double s);

double theta_of_s(const CurveParams& p, double s);
double s_of_theta(const CurveParams& p, double theta, ArcBranch branch = ArcBranch::within);

// For alpha < 0 the theta-addressed point goes through s_of_theta(theta, branch).
PlanePoint point_by_theta(const CurveParams& p, double theta, const QuadratureConfig& q = {},
                          ArcBranch branch = ArcBranch::within);
PlanePoint point_by_arc(const CurveParams& p, double s, const QuadratureConfig& q = {});

// Displacement between two parameter values on the same curve. Cheaper than two point calls
// when the values are close.
PlaneVector chord_by_theta(const CurveParams& p, double theta0, double theta1, const QuadratureConfig& q = {});
PlaneVector chord_by_arc(const CurveParams& p, double s0, double s1, const QuadratureConfig& q = {});

PlaneVector tangent_by_theta(const CurveParams& p, double theta);
PlaneVector tangent_by_arc(const CurveParams& p, double s);

double curvature_at_theta(const CurveParams& p, double theta);
double curvature_at_arc(const CurveParams& p, double s);

// Parameter where the curve is singular or inflects, if the curve has one.
std::optional<double> cusp_theta(const CurveParams& p);
std::optional<double> inflection_s(const CurveParams& p);

}  // namespace elac
