#include "elac/document.hpp"

#include <cmath>
#include <limits>

#include "json.hpp"

namespace elac {

using nlohmann::json;

namespace {

// Line of a byte offset, 1-based.
int line_of(std::string_view text, std::size_t byte) {
    int line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed document: ") + e.what(), "", line_of(text, e.byte));
    }
}

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw SchemaError(field + ": " + what, field);
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) bad(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad(field, "must be finite");
    return v;
}

std::pair<double, double> pair_of(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2) bad(field, "expected [x, y]");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]")};
}

PlanePoint point(const json& j, const std::string& field) {
    auto [x, y] = pair_of(j, field);
    return {x, y};
}

PlaneVector vec(const json& j, const std::string& field) {
    auto [x, y] = pair_of(j, field);
    return {x, y};
}

json to_json(PlanePoint p) { return json::array({p.x, p.y}); }
json to_json(PlaneVector v) { return json::array({v.x, v.y}); }

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) bad(where + it.key(), "unknown field");
    }
}

const char* mode_name(DocumentMode m) { return m == DocumentMode::chain ? "chain" : "independent"; }

DocumentMode mode_of(const json& j, const std::string& field) {
    if (!j.is_string()) bad(field, "expected \"independent\" or \"chain\"");
    const auto s = j.get<std::string>();
    if (s == "independent") return DocumentMode::independent;
    if (s == "chain") return DocumentMode::chain;
    bad(field, "expected \"independent\" or \"chain\"");
}

int version_of(const json& root) {
    if (!root.contains("version")) bad("version", "missing");
    if (!root["version"].is_number_integer()) bad("version", "expected an integer");
    const int v = root["version"].get<int>();
    if (v != document_version) bad("version", "unsupported version " + std::to_string(v));
    return v;
}

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

ProblemStep step_of(const json& s, const std::string& at, bool later) {
    if (!s.is_object()) bad(at, "expected an object");
    check_keys(s, at + ".", {"A", "C", "v_A", "v_C_dir", "alpha", "target_length"});
    ProblemStep st;
    for (const char* k : {"C", "v_C_dir"})
        if (!s.contains(k)) bad(at + "." + k, "missing");
    st.c = point(s["C"], at + ".C");
    st.v_c_dir = vec(s["v_C_dir"], at + ".v_C_dir");
    if (later) {
        for (const char* k : {"A", "v_A", "target_length"})
            if (s.contains(k)) bad(at + "." + k, "later chain steps continue from the previous end");
    } else {
        for (const char* k : {"A", "v_A"})
            if (!s.contains(k)) bad(at + "." + k, "missing");
        st.a = point(s["A"], at + ".A");
        st.v_a = vec(s["v_A"], at + ".v_A");
        if (s.contains("alpha") == s.contains("target_length"))
            bad(at, "exactly one of alpha and target_length is required");
    }
    if (s.contains("alpha")) st.alpha = number(s["alpha"], at + ".alpha");
    if (s.contains("target_length")) {
        st.target_length = number(s["target_length"], at + ".target_length");
        if (!(*st.target_length > 0.0)) bad(at + ".target_length", "must be positive");
    }
    return st;
}

}  // namespace

ProblemStep parse_step(std::string_view text, bool continues_chain) {
    return step_of(parse_json(text), "step", continues_chain);
}

ProblemDocument parse_problem(std::string_view text) {
    const json root = parse_json(text);
    if (!root.is_object()) bad("", "document must be an object");
    check_keys(root, "", {"version", "mode", "config", "steps"});
    ProblemDocument doc;
    doc.version = version_of(root);
    if (root.contains("mode")) doc.mode = mode_of(root["mode"], "mode");

    if (root.contains("config")) {
        const json& c = root["config"];
        if (!c.is_object()) bad("config", "expected an object");
        check_keys(c, "config.", {"tol_angle", "tol_length", "max_iter", "quad_tol", "extension"});
        auto positive = [&](const char* k) -> std::optional<double> {
            if (!c.contains(k)) return std::nullopt;
            const double v = number(c[k], std::string("config.") + k);
            if (!(v > 0.0)) bad(std::string("config.") + k, "must be positive");
            return v;
        };
        doc.config.tol_angle = positive("tol_angle");
        doc.config.tol_length = positive("tol_length");
        doc.config.quad_tol = positive("quad_tol");
        if (c.contains("max_iter")) {
            if (!c["max_iter"].is_number_integer() || c["max_iter"].get<long long>() < 1)
                bad("config.max_iter", "expected a positive integer");
            doc.config.max_iter = c["max_iter"].get<int>();
        }
        if (c.contains("extension")) {
            if (!c["extension"].is_boolean()) bad("config.extension", "expected true or false");
            doc.config.extension = c["extension"].get<bool>();
        }
    }

    if (!root.contains("steps")) bad("steps", "missing");
    const json& steps = root["steps"];
    if (!steps.is_array() || steps.empty()) bad("steps", "expected a non-empty array");
    for (std::size_t i = 0; i < steps.size(); ++i)
        doc.steps.push_back(step_of(steps[i], "steps[" + std::to_string(i) + "]", doc.mode == DocumentMode::chain && i > 0));
    return doc;
}

std::string serialize_problem(const ProblemDocument& doc) {
    json root;
    root["version"] = doc.version;
    root["mode"] = mode_name(doc.mode);
    json c = json::object();
    put(c, "tol_angle", doc.config.tol_angle);
    put(c, "tol_length", doc.config.tol_length);
    put(c, "max_iter", doc.config.max_iter);
    put(c, "quad_tol", doc.config.quad_tol);
    put(c, "extension", doc.config.extension);
    if (!c.empty()) root["config"] = c;
    json steps = json::array();
    for (const auto& s : doc.steps) {
        json j;
        if (s.a) j["A"] = to_json(*s.a);
        j["C"] = to_json(s.c);
        if (s.v_a) j["v_A"] = to_json(*s.v_a);
        j["v_C_dir"] = to_json(s.v_c_dir);
        put(j, "alpha", s.alpha);
        put(j, "target_length", s.target_length);
        steps.push_back(j);
    }
    root["steps"] = steps;
    return root.dump(2) + "\n";
}

AlphaConfig apply_overrides(const ConfigOverrides& o, AlphaConfig cfg) {
    if (o.tol_angle) cfg.solver.eps_angle = *o.tol_angle;
    if (o.tol_length) cfg.length_tol = *o.tol_length;
    if (o.max_iter) cfg.solver.max_iteration = *o.max_iter;
    if (o.quad_tol) cfg.solver.quad.abs_tol = *o.quad_tol;
    if (o.extension) cfg.solver.extension = *o.extension;
    return cfg;
}

// ---- solutions

namespace {

const char* kind_text(ParamKind k) { return k == ParamKind::arc ? "arc" : "theta"; }

Instance instance_from(const std::string& s, const std::string& field) {
    if (s == "plain") return Instance::plain;
    if (s == "inflection") return Instance::inflection;
    if (s == "cusp") return Instance::cusp;
    bad(field, "unknown instance");
}

const json& need(const json& j, const char* key, const std::string& at) {
    if (!j.contains(key)) bad(at + "." + key, "missing");
    return j[key];
}

bool flag(const json& j, const char* key, const std::string& at) {
    const json& v = need(j, key, at);
    if (!v.is_boolean()) bad(at + "." + key, "expected true or false");
    return v.get<bool>();
}

int integer(const json& j, const char* key, const std::string& at) {
    const json& v = need(j, key, at);
    if (!v.is_number_integer()) bad(at + "." + key, "expected an integer");
    return v.get<int>();
}

double num(const json& j, const char* key, const std::string& at) { return number(need(j, key, at), at + "." + key); }

}  // namespace

std::string serialize_solution(const SolutionDocument& doc) {
    json root;
    root["version"] = doc.version;
    root["mode"] = mode_name(doc.mode);
    json steps = json::array();
    for (const auto& s : doc.steps) {
        json j;
        if (s.alpha) j["alpha"] = *s.alpha;
        j["lambda"] = s.lambda;
        j["curve_alpha"] = s.curve_alpha;
        j["swap_flag"] = s.swap_flag;
        j["instance"] = instance_name(s.instance);
        j["contains_cusp"] = s.contains_cusp;
        j["contains_inflection"] = s.contains_inflection;
        j["parameter"] = {{"kind", kind_text(s.kind)}, {"start", s.start}, {"end", s.end},
                          {"theta_start", s.theta_start}, {"theta_end", s.theta_end}};
        j["transform"] = {{"scale", s.transform.scale}, {"rotation", s.transform.rotation},
                          {"reflect", s.transform.reflect}, {"pivot", to_json(s.transform.pivot)},
                          {"anchor", to_json(s.transform.anchor)}};
        j["A"] = to_json(s.a);
        j["C"] = to_json(s.c);
        j["residuals"] = {{"lambda_angle", s.residuals.lambda_angle}, {"length", s.residuals.length},
                          {"endpoint", s.residuals.endpoint}, {"tangent_A", s.residuals.tangent_a},
                          {"tangent_C", s.residuals.tangent_c}};
        j["iterations"] = {{"lambda", s.lambda_iterations}, {"alpha", s.alpha_iterations}};
        steps.push_back(j);
    }
    root["steps"] = steps;
    if (doc.continuity) {
        json joints = json::array();
        for (const auto& g : doc.continuity->joints) {
            joints.push_back({{"position", g.position}, {"angle", g.angle}, {"curvature", g.curvature},
                              {"k_left", g.k_left}, {"k_right", g.k_right}, {"g2", g.g2}, {"pass", g.pass}});
        }
        root["continuity"] = {{"joints", joints},
                              {"total_length", doc.continuity->total_length},
                              {"pass", doc.continuity->pass}};
    }
    return root.dump(2) + "\n";
}

SolutionDocument parse_solution(std::string_view text) {
    const json root = parse_json(text);
    if (!root.is_object()) bad("", "document must be an object");
    SolutionDocument doc;
    doc.version = version_of(root);
    doc.mode = mode_of(need(root, "mode", ""), "mode");
    const json& steps = need(root, "steps", "");
    if (!steps.is_array()) bad("steps", "expected an array");
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const std::string at = "steps[" + std::to_string(i) + "]";
        const json& j = steps[i];
        StepSolution s;
        if (j.contains("alpha")) s.alpha = number(j["alpha"], at + ".alpha");
        s.lambda = num(j, "lambda", at);
        s.curve_alpha = num(j, "curve_alpha", at);
        s.swap_flag = flag(j, "swap_flag", at);
        const json& inst = need(j, "instance", at);
        if (!inst.is_string()) bad(at + ".instance", "expected a string");
        s.instance = instance_from(inst.get<std::string>(), at + ".instance");
        s.contains_cusp = flag(j, "contains_cusp", at);
        s.contains_inflection = flag(j, "contains_inflection", at);
        const json& par = need(j, "parameter", at);
        const std::string pat = at + ".parameter";
        const json& kind = need(par, "kind", pat);
        if (kind != "theta" && kind != "arc") bad(pat + ".kind", "expected \"theta\" or \"arc\"");
        s.kind = kind == "arc" ? ParamKind::arc : ParamKind::theta;
        s.start = num(par, "start", pat);
        s.end = num(par, "end", pat);
        s.theta_start = num(par, "theta_start", pat);
        s.theta_end = num(par, "theta_end", pat);
        const json& tf = need(j, "transform", at);
        const std::string tat = at + ".transform";
        s.transform.scale = num(tf, "scale", tat);
        s.transform.rotation = num(tf, "rotation", tat);
        s.transform.reflect = flag(tf, "reflect", tat);
        s.transform.pivot = point(need(tf, "pivot", tat), tat + ".pivot");
        s.transform.anchor = point(need(tf, "anchor", tat), tat + ".anchor");
        s.a = point(need(j, "A", at), at + ".A");
        s.c = point(need(j, "C", at), at + ".C");
        const json& r = need(j, "residuals", at);
        const std::string rat = at + ".residuals";
        s.residuals = {num(r, "lambda_angle", rat), num(r, "length", rat), num(r, "endpoint", rat),
                       num(r, "tangent_A", rat), num(r, "tangent_C", rat)};
        const json& it = need(j, "iterations", at);
        s.lambda_iterations = integer(it, "lambda", at + ".iterations");
        s.alpha_iterations = integer(it, "alpha", at + ".iterations");
        doc.steps.push_back(s);
    }
    if (root.contains("continuity")) {
        const json& c = root["continuity"];
        ContinuityRecord rec;
        const json& joints = need(c, "joints", "continuity");
        if (!joints.is_array()) bad("continuity.joints", "expected an array");
        for (std::size_t i = 0; i < joints.size(); ++i) {
            const std::string at = "continuity.joints[" + std::to_string(i) + "]";
            const json& g = joints[i];
            rec.joints.push_back({num(g, "position", at), num(g, "angle", at), num(g, "curvature", at),
                                  num(g, "k_left", at), num(g, "k_right", at), flag(g, "g2", at), flag(g, "pass", at)});
        }
        rec.total_length = num(c, "total_length", "continuity");
        rec.pass = flag(c, "pass", "continuity");
        doc.continuity = rec;
    }
    return doc;
}

StepSolution record_step(const Segment& seg, const HermiteProblem& problem, const StepInfo& info) {
    StepSolution s;
    s.alpha = info.alpha;
    s.lambda = seg.params.lambda;
    s.curve_alpha = seg.params.alpha;
    s.swap_flag = seg.swap_flag;
    s.instance = info.instance;
    s.contains_cusp = seg.contains_cusp;
    s.contains_inflection = seg.contains_inflection;
    s.kind = seg.kind;
    s.start = seg.start;
    s.end = seg.end;
    s.theta_start = seg.theta_start;
    s.theta_end = seg.theta_end;
    s.transform = seg.transform;
    s.a = seg.a;
    s.c = seg.c;
    const auto e0 = evaluate_segment(seg, 0.0);
    const auto e1 = evaluate_segment(seg, 1.0);
    const double tc = angle_between(e1.tangent, problem.v_c_dir);
    s.residuals = {seg.lambda_residual, info.length_residual, distance(e1.point, seg.c),
                   angle_between(e0.tangent, problem.v_a), std::min(tc, std::numbers::pi - tc)};
    s.lambda_iterations = seg.lambda_iterations;
    s.alpha_iterations = info.alpha_iterations;
    return s;
}

Segment rebuild_segment(const StepSolution& s) {
    Segment seg;
    seg.params = {s.curve_alpha, s.lambda};
    seg.kind = s.kind;
    seg.start = s.start;
    seg.end = s.end;
    seg.theta_start = s.theta_start;
    seg.theta_end = s.theta_end;
    seg.transform = s.transform;
    seg.swap_flag = s.swap_flag;
    seg.contains_cusp = s.contains_cusp;
    seg.contains_inflection = s.contains_inflection;
    seg.a = s.a;
    seg.c = s.c;
    seg.lambda_residual = s.residuals.lambda_angle;
    seg.lambda_iterations = s.lambda_iterations;
    return seg;
}

Chain rebuild_chain(const SolutionDocument& doc) {
    Chain chain;
    for (std::size_t i = 0; i < doc.steps.size(); ++i) {
        const StepSolution& s = doc.steps[i];
        chain.segments.push_back(rebuild_segment(s));
        chain.steps.push_back({s.alpha, s.instance, s.alpha_iterations, s.residuals.length});
        if (i == 0 || doc.mode != DocumentMode::chain) continue;
        const auto e = evaluate_segment(chain.segments[i - 1], 1.0);
        const bool g2 = doc.continuity && i - 1 < doc.continuity->joints.size() ? doc.continuity->joints[i - 1].g2 : true;
        chain.joints.push_back({e.point, e.tangent, e.curvature, g2});
    }
    return chain;
}

ContinuityRecord record_continuity(const ContinuityReport& rep) {
    ContinuityRecord rec;
    for (const auto& g : rep.joints)
        rec.joints.push_back({g.position, g.angle, g.curvature, g.k_left, g.k_right, g.g2, g.pass});
    rec.total_length = rep.total_length;
    rec.pass = rep.pass;
    return rec;
}

HermiteProblem problem_of(const ProblemStep& step) {
    if (!step.a || !step.v_a) throw SchemaError("step has no A or v_A", step.a ? "v_A" : "A");
    PlaneVector va = *step.v_a;
    // A length-driven step takes the direction of v_A and the requested length.
    if (step.target_length) {
        const double n = norm(va);
        if (!(n > 0.0)) throw DomainError("v_A must be non-zero");
        va = (*step.target_length / n) * va;
    }
    return {*step.a, step.c, va, step.v_c_dir};
}

namespace {

struct StepOutcome {
    Segment seg;
    HermiteProblem problem;
    StepInfo info;
};

StepOutcome solve_first(const ProblemStep& st, const AlphaConfig& cfg) {
    const HermiteProblem pr = problem_of(st);
    if (st.alpha) {
        Segment seg = solve_g1(pr, *st.alpha, cfg.solver);
        return {seg, pr, {seg.params.alpha, instance_of(seg), 0, 0.0}};
    }
    const AlphaResult r = alpha_bisection(pr, *st.target_length, cfg);
    return {r.segment, pr, {r.alpha, r.instance, r.iterations, r.length_residual}};
}

}  // namespace

Solved solve_document(const ProblemDocument& doc, const AlphaConfig& base, std::size_t* failed_step) {
    const AlphaConfig cfg = apply_overrides(doc.config, base);
    Solved out;
    out.solution.mode = doc.mode;
    for (std::size_t i = 0; i < doc.steps.size(); ++i) {
        const ProblemStep& st = doc.steps[i];
        try {
            if (doc.mode == DocumentMode::independent || i == 0) {
                StepOutcome o = solve_first(st, cfg);
                out.solution.steps.push_back(record_step(o.seg, o.problem, o.info));
                out.problems.push_back(o.problem);
                if (doc.mode == DocumentMode::chain) {
                    out.chain = start_chain(o.seg, o.info);
                } else {
                    out.chain.segments.push_back(o.seg);
                    out.chain.steps.push_back(o.info);
                }
                continue;
            }
            out.chain = st.alpha ? append_g1(out.chain, st.c, st.v_c_dir, *st.alpha, cfg.solver)
                                 : append_g2(out.chain, st.c, st.v_c_dir, cfg);
            const Joint& j = out.chain.joints.back();
            const HermiteProblem pr{out.chain.segments[i - 1].c, st.c, j.tangent, st.v_c_dir};
            out.solution.steps.push_back(record_step(out.chain.segments.back(), pr, out.chain.steps.back()));
            out.problems.push_back(pr);
        } catch (...) {
            if (failed_step) *failed_step = i;
            throw;
        }
    }
    if (doc.mode == DocumentMode::chain) out.solution.continuity = record_continuity(verify_continuity(out.chain));
    return out;
}

std::string error_payload(const Error& e, std::optional<std::size_t> step) {
    json err;
    err["kind"] = kind_name(e.kind());
    err["message"] = e.what();
    if (step) err["step"] = *step;
    auto bound = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    if (const auto* u = dynamic_cast<const Unreachable*>(&e)) err["attainable"] = json::array({bound(u->lo), bound(u->hi)});
    if (const auto* n = dynamic_cast<const NotFound*>(&e)) err["bracket"] = json::array({bound(n->lo), bound(n->hi)});
    if (const auto* s = dynamic_cast<const SchemaError*>(&e)) {
        err["field"] = s->field;
        if (s->line > 0) err["line"] = s->line;
    }
    return json{{"error", err}}.dump();
}

std::string serialize_limits(const std::vector<TangentLimits>& limits) {
    json arr = json::array();
    for (const auto& l : limits) {
        const json hi = std::isfinite(l.attainable.hi) ? json(l.attainable.hi) : json(nullptr);
        arr.push_back({{"r_neg_inf", l.r_neg_inf},
                       {"r_pos_inf", l.r_pos_inf},
                       {"instance", instance_name(l.instance)},
                       {"attainable", json::array({l.attainable.lo, hi})}});
    }
    return json{{"limits", arr}}.dump(2) + "\n";
}

}  // namespace elac
