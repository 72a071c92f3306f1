#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "elac/document.hpp"

namespace httplib {
class Server;
}

namespace elac {

// Loopback request/response API backing the designer. Bodies are JSON.
//   POST /solve-step   ProblemDocument -> {session, solution, limits}
//   POST /append-step  {session, step} -> {session, solution, limits}
//   POST /limits       ProblemDocument, or {session, step} for a prospective next step -> {limits}
//   POST /sample       {session} or {solution}, plus n | chord_tol, svg? -> {ts, points} or {svg}
// Solver failures answer 422 with the error payload, malformed input 400, unknown sessions 404.

struct ServiceConfig {
    std::chrono::seconds session_ttl{1800};
    AlphaConfig solver;
};

struct ServiceResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

class Service {
public:
    using Clock = std::chrono::steady_clock;

    explicit Service(ServiceConfig cfg = {});

    ServiceResponse handle(std::string_view endpoint, std::string_view body);

    // Drops sessions idle for longer than the ttl. Called on every request as well.
    void expire(Clock::time_point now = Clock::now());
    std::size_t session_count() const;

private:
    struct Session;

    ServiceResponse solve_step(std::string_view body);
    ServiceResponse append_step(std::string_view body);
    ServiceResponse limits(std::string_view body);
    ServiceResponse sample(std::string_view body);

    std::shared_ptr<Session> find(const std::string& id);
    std::string open(std::shared_ptr<Session> s);

    ServiceConfig cfg_;
    mutable std::mutex mutex_;  // guards sessions_; each session has its own lock for mutations
    std::map<std::string, std::shared_ptr<Session>> sessions_;
};

// ELAC_PORT, or 8765.
int service_port();

class LoopbackServer {
public:
    explicit LoopbackServer(Service& service);
    ~LoopbackServer();

    // Binds 127.0.0.1; port 0 picks a free one. Returns the bound port, or -1.
    int bind(int port);
    void listen();  // blocks until stop()
    void stop();

private:
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace elac
