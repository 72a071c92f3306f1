#include "elac/service.hpp"

#include <cstdlib>
#include <random>

#include "elac/sampling.hpp"
#include "elac/svg.hpp"
#include "httplib.h"
#include "json.hpp"

namespace elac {

using nlohmann::json;

struct Service::Session {
    std::mutex mutex;
    Clock::time_point last_used = Clock::now();
    AlphaConfig cfg;
    Solved solved;
};

namespace {

ServiceResponse reply(const json& j, int status = 200) { return {status, j.dump(), "application/json"}; }

ServiceResponse failure(const Error& e, std::optional<std::size_t> step = std::nullopt) {
    return {e.kind() == ErrorKind::schema ? 400 : 422, error_payload(e, step), "application/json"};
}

ServiceResponse missing_session(const std::string& id) {
    return reply({{"error", {{"kind", "SessionNotFound"}, {"message", "no session " + id}}}}, 404);
}

json parse_body(std::string_view body) {
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed request: ") + e.what(), "");
    }
}

std::string session_id_of(const json& j) {
    if (!j.is_object() || !j.contains("session") || !j["session"].is_string())
        throw SchemaError("session: expected a session id", "session");
    return j["session"].get<std::string>();
}

json limits_json(const std::vector<HermiteProblem>& problems) {
    std::vector<TangentLimits> out;
    json arr = json::array();
    for (const auto& p : problems) {
        try {
            out = {tangent_length_limits(p)};
            arr.push_back(json::parse(serialize_limits(out))["limits"][0]);
        } catch (const Error&) {
            arr.push_back(nullptr);
        }
    }
    return arr;
}

json solution_json(const SolutionDocument& doc) { return json::parse(serialize_solution(doc)); }

std::string new_id() {
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", (unsigned long long)rng(), (unsigned long long)rng());
    return buf;
}

}  // namespace

Service::Service(ServiceConfig cfg) : cfg_(cfg) {}

ServiceResponse Service::handle(std::string_view endpoint, std::string_view body) {
    expire();
    try {
        if (endpoint == "/solve-step") return solve_step(body);
        if (endpoint == "/append-step") return append_step(body);
        if (endpoint == "/limits") return limits(body);
        if (endpoint == "/sample") return sample(body);
        return reply({{"error", {{"kind", "NotAnEndpoint"}, {"message", std::string(endpoint)}}}}, 404);
    } catch (const Error& e) {
        return failure(e);
    } catch (const json::exception& e) {
        return failure(SchemaError(e.what(), ""));
    }
}

void Service::expire(Clock::time_point now) {
    std::lock_guard lock(mutex_);
    std::erase_if(sessions_, [&](const auto& kv) {
        std::unique_lock s(kv.second->mutex, std::try_to_lock);
        return s.owns_lock() && now - kv.second->last_used > cfg_.session_ttl;
    });
}

std::size_t Service::session_count() const {
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

std::shared_ptr<Service::Session> Service::find(const std::string& id) {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::string Service::open(std::shared_ptr<Session> s) {
    std::string id = new_id();
    std::lock_guard lock(mutex_);
    sessions_[id] = std::move(s);
    return id;
}

ServiceResponse Service::solve_step(std::string_view body) {
    const ProblemDocument doc = parse_problem(body);
    auto s = std::make_shared<Session>();
    s->cfg = apply_overrides(doc.config, cfg_.solver);
    std::size_t failed = 0;
    try {
        s->solved = solve_document(doc, cfg_.solver, &failed);
    } catch (const Error& e) {
        return failure(e, failed);
    }
    json out;
    out["solution"] = solution_json(s->solved.solution);
    out["limits"] = limits_json(s->solved.problems);
    // Only a chain, or a single step, can be continued.
    if (doc.mode == DocumentMode::chain || doc.steps.size() == 1) {
        s->solved.solution.mode = DocumentMode::chain;
        out["session"] = open(s);
    } else {
        out["session"] = nullptr;
    }
    return reply(out);
}

ServiceResponse Service::append_step(std::string_view body) {
    const json req = parse_body(body);
    const std::string id = session_id_of(req);
    if (!req.contains("step")) throw SchemaError("step: missing", "step");
    const ProblemStep st = parse_step(req["step"].dump(), true);
    auto s = find(id);
    if (!s) return missing_session(id);

    std::lock_guard lock(s->mutex);
    s->last_used = Clock::now();
    Solved& sv = s->solved;
    const std::size_t i = sv.chain.segments.size();
    Chain next;
    try {
        next = st.alpha ? append_g1(sv.chain, st.c, st.v_c_dir, *st.alpha, s->cfg.solver)
                        : append_g2(sv.chain, st.c, st.v_c_dir, s->cfg);
    } catch (const Error& e) {
        return failure(e, i);
    }
    sv.chain = std::move(next);
    const HermiteProblem pr{sv.chain.segments[i - 1].c, st.c, sv.chain.joints.back().tangent, st.v_c_dir};
    sv.problems.push_back(pr);
    sv.solution.steps.push_back(record_step(sv.chain.segments.back(), pr, sv.chain.steps.back()));
    sv.solution.continuity = record_continuity(verify_continuity(sv.chain));

    json out;
    out["session"] = id;
    out["solution"] = solution_json(sv.solution);
    out["limits"] = limits_json({pr});
    return reply(out);
}

ServiceResponse Service::limits(std::string_view body) {
    const json req = parse_body(body);
    if (req.is_object() && req.contains("session")) {
        const std::string id = session_id_of(req);
        if (!req.contains("step")) throw SchemaError("step: missing", "step");
        const ProblemStep st = parse_step(req["step"].dump(), true);
        auto s = find(id);
        if (!s) return missing_session(id);
        std::lock_guard lock(s->mutex);
        s->last_used = Clock::now();
        const Segment& prev = s->solved.chain.segments.back();
        const HermiteProblem pr{prev.c, st.c, end_tangent(prev), st.v_c_dir};
        return reply({{"limits", json::array({json::parse(serialize_limits({tangent_length_limits(pr)}))["limits"][0]})}});
    }
    const ProblemDocument doc = parse_problem(body);
    std::vector<TangentLimits> out;
    for (std::size_t i = 0; i < doc.steps.size(); ++i) {
        if (!doc.steps[i].a) throw SchemaError("limits need A and v_A on every step", "steps[" + std::to_string(i) + "]");
        try {
            out.push_back(tangent_length_limits(problem_of(doc.steps[i])));
        } catch (const Error& e) {
            return failure(e, i);
        }
    }
    return {200, serialize_limits(out), "application/json"};
}

ServiceResponse Service::sample(std::string_view body) {
    const json req = parse_body(body);
    if (!req.is_object()) throw SchemaError("expected an object", "");
    Chain chain;
    if (req.contains("session")) {
        const std::string id = session_id_of(req);
        auto s = find(id);
        if (!s) return missing_session(id);
        std::lock_guard lock(s->mutex);
        s->last_used = Clock::now();
        chain = s->solved.chain;
    } else if (req.contains("solution")) {
        chain = rebuild_chain(parse_solution(req["solution"].dump()));
    } else {
        throw SchemaError("session or solution required", "session");
    }

    if (req.value("svg", false)) {
        SvgStyle style;
        if (req.contains("chord_tol")) style.chord_tol = req["chord_tol"].get<double>();
        style.control_points = req.value("control_points", false);
        style.tangent_arrows = req.value("tangent_arrows", false);
        style.joint_markers = req.value("joint_markers", false);
        return reply({{"svg", export_svg(chain, style)}});
    }
    SampleSpec spec;
    if (req.contains("chord_tol")) {
        spec.mode = SampleSpec::Mode::chord;
        spec.chord_tol = req["chord_tol"].get<double>();
        if (!(spec.chord_tol > 0.0)) throw SchemaError("chord_tol: must be positive", "chord_tol");
    } else if (req.contains("n")) {
        spec.n = req["n"].get<int>();
        if (spec.n < 1) throw SchemaError("n: must be at least 1", "n");
    }
    const Polyline line = sample_polyline(chain, spec);
    json pts = json::array();
    for (const auto& p : line.points) pts.push_back({p.x, p.y});
    return reply({{"ts", line.ts}, {"points", pts}});
}

int service_port() {
    if (const char* env = std::getenv("ELAC_PORT")) {
        const int p = std::atoi(env);
        if (p > 0 && p < 65536) return p;
    }
    return 8765;
}

LoopbackServer::LoopbackServer(Service& service) : server_(std::make_unique<httplib::Server>()) {
    for (const char* ep : {"/solve-step", "/append-step", "/limits", "/sample"}) {
        server_->Post(ep, [&service, ep](const httplib::Request& req, httplib::Response& res) {
            const ServiceResponse r = service.handle(ep, req.body);
            res.status = r.status;
            res.set_content(r.body, r.content_type);
        });
    }
}

LoopbackServer::~LoopbackServer() = default;

int LoopbackServer::bind(int port) {
    if (port == 0) return server_->bind_to_any_port("127.0.0.1");
    return server_->bind_to_port("127.0.0.1", port) ? port : -1;
}

void LoopbackServer::listen() { server_->listen_after_bind(); }

void LoopbackServer::stop() { server_->stop(); }

}  // namespace elac
