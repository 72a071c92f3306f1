#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elac/chain.hpp"

namespace elac {

// Version 1 documents, JSON.
//
// Problem:
//   { "version": 1, "mode": "independent" | "chain",
//     "config": { "tol_angle", "tol_length", "max_iter", "quad_tol", "extension" },   (all optional)
//     "steps": [ { "A": [x, y], "C": [x, y], "v_A": [x, y], "v_C_dir": [x, y],
//                  "alpha": a  |  "target_length": l }, ... ] }
//
// In chain mode only the first step carries A and v_A; later steps take them from the previous
// end (point and end tangent), and may give "alpha" for a fixed-alpha G1 step. Without it the
// step is solved for G2 by alpha bisection.

inline constexpr int document_version = 1;

enum class DocumentMode { independent, chain };

struct ConfigOverrides {
    std::optional<double> tol_angle;
    std::optional<double> tol_length;
    std::optional<int> max_iter;
    std::optional<double> quad_tol;
    std::optional<bool> extension;
    friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;
};

struct ProblemStep {
    std::optional<PlanePoint> a;
    PlanePoint c;
    std::optional<PlaneVector> v_a;
    PlaneVector v_c_dir;
    std::optional<double> alpha;
    std::optional<double> target_length;
    friend bool operator==(const ProblemStep&, const ProblemStep&) = default;
};

struct ProblemDocument {
    int version = document_version;
    DocumentMode mode = DocumentMode::independent;
    ConfigOverrides config;
    std::vector<ProblemStep> steps;
    friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

ProblemDocument parse_problem(std::string_view text);

// One step object on its own, validated as a first step or as a chain continuation.
ProblemStep parse_step(std::string_view text, bool continues_chain);
std::string serialize_problem(const ProblemDocument& doc);

AlphaConfig apply_overrides(const ConfigOverrides& o, AlphaConfig base = {});

struct StepResiduals {
    double lambda_angle = 0.0;
    double length = 0.0;        // relative, length-driven steps only
    double endpoint = 0.0;      // |seg(1) - C|
    double tangent_a = 0.0;     // rad
    double tangent_c = 0.0;     // rad, against the tangent line at C
    friend bool operator==(const StepResiduals&, const StepResiduals&) = default;
};

// Everything needed to rebuild the segment without solving again.
struct StepSolution {
    std::optional<double> alpha;  // absent for the circle reached by a length-driven solve
    double lambda = 0.0;
    double curve_alpha = 0.0;     // alpha actually used by the standard curve
    bool swap_flag = false;
    Instance instance = Instance::plain;
    bool contains_cusp = false;
    bool contains_inflection = false;
    ParamKind kind = ParamKind::theta;
    double start = 0.0;
    double end = 0.0;
    double theta_start = 0.0;
    double theta_end = 0.0;
    SimilarityTransform transform;
    PlanePoint a;
    PlanePoint c;
    StepResiduals residuals;
    int lambda_iterations = 0;
    int alpha_iterations = 0;
    friend bool operator==(const StepSolution&, const StepSolution&) = default;
};

struct JointRecord {
    double position = 0.0;
    double angle = 0.0;
    double curvature = 0.0;
    double k_left = 0.0;
    double k_right = 0.0;
    bool g2 = true;
    bool pass = true;
    friend bool operator==(const JointRecord&, const JointRecord&) = default;
};

struct ContinuityRecord {
    std::vector<JointRecord> joints;
    double total_length = 0.0;
    bool pass = true;
    friend bool operator==(const ContinuityRecord&, const ContinuityRecord&) = default;
};

struct SolutionDocument {
    int version = document_version;
    DocumentMode mode = DocumentMode::independent;
    std::vector<StepSolution> steps;
    std::optional<ContinuityRecord> continuity;  // chain mode
    friend bool operator==(const SolutionDocument&, const SolutionDocument&) = default;
};

SolutionDocument parse_solution(std::string_view text);
std::string serialize_solution(const SolutionDocument& doc);

StepSolution record_step(const Segment& seg, const HermiteProblem& problem, const StepInfo& info);
Segment rebuild_segment(const StepSolution& step);

// Segments of a solution; joint tangents are unit vectors, which is all sampling and checks need.
Chain rebuild_chain(const SolutionDocument& doc);
ContinuityRecord record_continuity(const ContinuityReport& rep);

struct Solved {
    SolutionDocument solution;
    Chain chain;  // every solved segment; in independent mode there are no joints
    std::vector<HermiteProblem> problems;  // as posed to the solver, chain steps included
};

// Solves every step. Solver errors propagate unchanged; failed_step, when given, receives the
// index of the step that threw.
Solved solve_document(const ProblemDocument& doc, const AlphaConfig& base = {},
                      std::size_t* failed_step = nullptr);

// One-step helpers shared by the CLI and the service.
HermiteProblem problem_of(const ProblemStep& step);

// JSON error payload: {"error": {"kind", "message", "step"?, "attainable"?, "field"?, "line"?}}
std::string error_payload(const Error& e, std::optional<std::size_t> step = std::nullopt);

// {"limits": [{r_neg_inf, r_pos_inf, instance, attainable: [lo, hi]}, ...]}; an infinite hi is null.
std::string serialize_limits(const std::vector<TangentLimits>& limits);

}  // namespace elac
