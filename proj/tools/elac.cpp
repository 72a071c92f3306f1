// elac: solve, chain, sample, limits, verify and serve from the command line.
// Exit status: 0 success, 1 bad input, 2 solver failure or failed verification.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "elac/harness.hpp"
#include "elac/sampling.hpp"
#include "elac/service.hpp"
#include "elac/svg.hpp"
#include "json.hpp"

using namespace elac;

namespace {

struct Flags {
    std::string input = "-";
    std::string output;
    std::string format = "document";
    std::optional<double> tol_angle, tol_length, quad_tol, chord_tol;
    std::optional<int> max_iter;
    std::uint64_t seed = 1;
    int n = 64;
    int random = 0;
    int segments = 2;
    int port = 0;
};

std::string read_input(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot read " + path, "");
    return {std::istreambuf_iterator<char>(in), {}};
}

void write_output(const Flags& f, const std::string& text) {
    if (f.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(f.output, std::ios::binary);
    out << text;
}

// Command-line tolerances win over the document's own config.
void override_config(const Flags& f, ProblemDocument& doc) {
    if (f.tol_angle) doc.config.tol_angle = f.tol_angle;
    if (f.tol_length) doc.config.tol_length = f.tol_length;
    if (f.max_iter) doc.config.max_iter = f.max_iter;
    if (f.quad_tol) doc.config.quad_tol = f.quad_tol;
}

ProblemDocument load_problem(const Flags& f) {
    ProblemDocument doc = parse_problem(read_input(f.input));
    override_config(f, doc);
    return doc;
}

std::optional<std::size_t> failed_step;  // set when a document step throws

Solved solve(const ProblemDocument& doc) {
    std::size_t step = 0;
    try {
        return solve_document(doc, {}, &step);
    } catch (const Error&) {
        failed_step = step;
        throw;
    }
}

SvgStyle svg_style(const Flags& f) {
    SvgStyle s;
    s.chord_tol = f.chord_tol;
    s.control_points = s.tangent_arrows = s.joint_markers = true;
    return s;
}

int cmd_solve(const Flags& f, bool chain_only) {
    const ProblemDocument doc = load_problem(f);
    if (chain_only && doc.mode != DocumentMode::chain) throw SchemaError("mode: chain expected", "mode");
    const Solved s = solve(doc);
    write_output(f, f.format == "svg" ? export_svg(s.chain, svg_style(f)) : serialize_solution(s.solution));
    return s.solution.continuity && !s.solution.continuity->pass ? 2 : 0;
}

// Input may be a problem (solved first) or a solution document.
Chain load_chain(const Flags& f) {
    const std::string text = read_input(f.input);
    const auto j = nlohmann::json::parse(text, nullptr, false);
    const bool solution = j.is_object() && j.contains("steps") && j["steps"].is_array() && !j["steps"].empty() &&
                          j["steps"][0].is_object() && j["steps"][0].contains("lambda");
    if (solution) return rebuild_chain(parse_solution(text));
    ProblemDocument doc = parse_problem(text);
    override_config(f, doc);
    return solve(doc).chain;
}

int cmd_sample(const Flags& f) {
    const Chain chain = load_chain(f);
    if (f.format == "svg") {
        write_output(f, export_svg(chain, svg_style(f)));
        return 0;
    }
    SampleSpec spec;
    spec.n = f.n;
    if (f.chord_tol) {
        spec.mode = SampleSpec::Mode::chord;
        spec.chord_tol = *f.chord_tol;
    }
    const Polyline line = sample_polyline(chain, spec);
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : line.points) pts.push_back({p.x, p.y});
    write_output(f, nlohmann::json{{"ts", line.ts}, {"points", pts}}.dump(2) + "\n");
    return 0;
}

int cmd_limits(const Flags& f) {
    const ProblemDocument doc = load_problem(f);
    std::vector<TangentLimits> out;
    for (std::size_t i = 0; i < doc.steps.size(); ++i) {
        if (!doc.steps[i].a) throw SchemaError("limits need A and v_A", "steps[" + std::to_string(i) + "]");
        out.push_back(tangent_length_limits(problem_of(doc.steps[i])));
    }
    write_output(f, serialize_limits(out));
    return 0;
}

int cmd_verify(const Flags& f) {
    if (f.random > 0) {
        std::mt19937_64 rng(f.seed);
        int built = 0, passed = 0, draws = 0;
        while (built < f.random && draws < 100 * f.random) {
            ++draws;
            const auto chain = random_g2_chain(rng, f.segments);
            if (!chain) continue;
            ++built;
            if (verify_continuity(*chain).pass) ++passed;
        }
        std::ostringstream os;
        os << "{\"chains\": " << built << ", \"passed\": " << passed << ", \"draws\": " << draws << "}\n";
        write_output(f, os.str());
        return built == f.random && passed == built ? 0 : 2;
    }
    const Chain chain = load_chain(f);
    const ContinuityReport rep = verify_continuity(chain);
    SolutionDocument only;
    only.mode = DocumentMode::chain;
    only.continuity = record_continuity(rep);
    const auto j = nlohmann::json::parse(serialize_solution(only));
    write_output(f, j["continuity"].dump(2) + "\n");
    return rep.pass ? 0 : 2;
}

int cmd_serve(const Flags& f) {
    Service service;
    LoopbackServer server(service);
    const int port = server.bind(f.port > 0 ? f.port : service_port());
    if (port < 0) {
        std::cerr << "cannot bind 127.0.0.1\n";
        return 1;
    }
    std::cerr << "listening on 127.0.0.1:" << port << "\n";
    server.listen();
    return 0;
}

bool input_error(ErrorKind k) {
    switch (k) {
        case ErrorKind::schema:
        case ErrorKind::domain:
        case ErrorKind::parallel_tangents:
        case ErrorKind::degenerate_triangle:
            return true;
        default:
            return false;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hermite interpolation with extended log-aesthetic curves"};
    app.require_subcommand(1);
    Flags f;

    auto solver_flags = [&](CLI::App* c) {
        c->add_option("input", f.input, "problem document, - for stdin");
        c->add_option("-o,--output", f.output, "write here instead of stdout");
        c->add_option("--tol-angle", f.tol_angle, "Lambda bisection angle residual");
        c->add_option("--tol-length", f.tol_length, "relative first-tangent length tolerance");
        c->add_option("--max-iter", f.max_iter, "Lambda bisection iterations");
        c->add_option("--quad-tol", f.quad_tol, "quadrature absolute tolerance");
        c->add_option("--seed", f.seed, "random seed");
    };
    auto format_flag = [&](CLI::App* c) {
        c->add_option("--format", f.format, "document or svg")->check(CLI::IsMember({"document", "svg"}));
        c->add_option("--chord-tol", f.chord_tol, "polyline chord tolerance");
    };

    auto* solve_cmd = app.add_subcommand("solve", "solve a problem document");
    solver_flags(solve_cmd);
    format_flag(solve_cmd);
    auto* chain_cmd = app.add_subcommand("chain", "solve a chain document and check its joints");
    solver_flags(chain_cmd);
    format_flag(chain_cmd);
    auto* sample_cmd = app.add_subcommand("sample", "polyline of a problem or solution document");
    solver_flags(sample_cmd);
    format_flag(sample_cmd);
    sample_cmd->add_option("-n,--count", f.n, "uniform intervals per segment")->check(CLI::PositiveNumber);
    auto* limits_cmd = app.add_subcommand("limits", "attainable first-tangent lengths");
    solver_flags(limits_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "continuity report");
    solver_flags(verify_cmd);
    verify_cmd->add_option("--random", f.random, "check this many random G2 chains instead");
    verify_cmd->add_option("--segments", f.segments, "segments per random chain")->check(CLI::Range(2, 20));
    auto* serve_cmd = app.add_subcommand("serve", "loopback service (port from ELAC_PORT, default 8765)");
    serve_cmd->add_option("--port", f.port, "override the port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (*solve_cmd) return cmd_solve(f, false);
        if (*chain_cmd) return cmd_solve(f, true);
        if (*sample_cmd) return cmd_sample(f);
        if (*limits_cmd) return cmd_limits(f);
        if (*verify_cmd) return cmd_verify(f);
        if (*serve_cmd) return cmd_serve(f);
    } catch (const Error& e) {
        std::cerr << error_payload(e, failed_step) << "\n";
        return input_error(e.kind()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << error_payload(SchemaError(e.what(), "")) << "\n";
        return 1;
    }
    return 1;
}
