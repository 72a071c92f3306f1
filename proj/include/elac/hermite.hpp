#pragma once

#include <utility>
#include <vector>

#include "elac/curve.hpp"

namespace elac {

struct HermiteProblem {
    PlanePoint a;
    PlanePoint c;
    PlaneVector v_a;      // direction and length
    PlaneVector v_c_dir;  // direction only; its sense matters only for swapped instance selection
};

enum class Orientation { ccw, cw };

struct TriangleData {
    PlanePoint a, b, c;
    double theta_delta = 0.0;
    bool swap_flag = false;
    Orientation orientation = Orientation::ccw;  // turning sense of the curve from A to C
    bool va_toward_b = true;
    bool vc_toward_b = true;
    bool isosceles = false;

    // P1 is the world point matched to A', P3 the one matched to C'.
    PlanePoint p1() const { return swap_flag ? c : a; }
    PlanePoint p3() const { return swap_flag ? a : c; }
    double angle_p1 = 0.0;  // interior angles of P1 B P3
    double angle_p3 = 0.0;
    bool reflect = false;  // P1 B P3 is clockwise, so the standard frame must be mirrored
};

TriangleData build_triangle(const HermiteProblem& problem);

enum class ParamKind { theta, arc };

struct StandardTriangle {
    PlanePoint a, b, c;  // A', B', C'
    PlaneVector t_a, t_c;
    double angle_a = 0.0;  // unsigned interior angles at A' and C'
    double angle_c = 0.0;
    ParamKind kind = ParamKind::theta;
    double start = 0.0;  // parameter of A'
    double end = 0.0;    // parameter of C'
    bool contains_cusp = false;
    bool contains_inflection = false;
};

StandardTriangle standard_triangle(const CurveParams& p, double theta_delta, ArcBranch branch,
                                   const QuadratureConfig& q = {});

struct SolverConfig {
    double eps_angle = 1e-12;
    int max_iteration = 100;
    QuadratureConfig quad;
    bool extension = true;
    double alpha_band = default_alpha_band;
    double similarity_tol = 1e-9;
    bool record_trace = false;
};

struct LambdaResult {
    double lambda = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool beyond_inf_point = false;
    bool converged = false;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::vector<std::pair<double, double>> trace;  // bisection brackets, when requested
};

LambdaResult lambda_bisection(double alpha, const TriangleData& tri, const SolverConfig& cfg = {});

// p -> anchor + scale * R(rotation) * M * (p - pivot), M = diag(1, -1) when reflect.
// Anchoring at a point pair makes that pair map exactly.
struct SimilarityTransform {
    double scale = 1.0;
    double rotation = 0.0;
    bool reflect = false;
    PlanePoint pivot;   // standard frame
    PlanePoint anchor;  // world frame

    PlaneVector apply(PlaneVector v) const;
    PlanePoint apply(PlanePoint p) const;
    PlaneVector translation() const { return apply(origin()) - origin(); }
    friend bool operator==(const SimilarityTransform&, const SimilarityTransform&) = default;
};

// Maps A' to P1 and C' to P3, anchored so that the world point A is hit exactly.
SimilarityTransform fit_transform(const TriangleData& tri, const StandardTriangle& st, double tol = 1e-9);

struct Segment {
    CurveParams params;
    ParamKind kind = ParamKind::theta;
    double start = 0.0;  // standard parameter at A'
    double end = 0.0;    // standard parameter at C'
    double theta_start = 0.0;
    double theta_end = 0.0;
    SimilarityTransform transform;
    bool swap_flag = false;
    bool contains_cusp = false;
    bool contains_inflection = false;
    PlanePoint a;  // world endpoints as given
    PlanePoint c;
    double lambda_residual = 0.0;
    int lambda_iterations = 0;

    // Standard parameter reached at normalized world parameter t (t = 0 is A).
    double param_at(double t) const;
};

Segment solve_g1(const HermiteProblem& problem, double alpha, const SolverConfig& cfg = {});

// Same solve without the check that the curve leaves A along v_A.
Segment solve_triangle(const TriangleData& tri, double alpha, const SolverConfig& cfg = {});

// Circular arc through an isosceles triangle; alpha is carried along unchanged.
Segment circular_arc(const TriangleData& tri, double alpha);

struct SegmentSample {
    PlanePoint point;
    PlaneVector tangent;  // unit, along the direction of travel from A to C
    double curvature;     // signed, world frame, positive = turning left
};

SegmentSample evaluate_segment(const Segment& seg, double t, const QuadratureConfig& q = {});

// Standard-frame velocity along increasing parameter and its signed curvature.
PlaneVector standard_velocity(const Segment& seg, double param);
double standard_radius(const Segment& seg, double param);

// Sign that turns standard-frame curvature into world curvature along A -> C.
double world_curvature_sign(const Segment& seg);

}  // namespace elac
