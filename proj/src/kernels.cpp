#include "elac/kernels.hpp"

#include <omp.h>

#include <stdexcept>

namespace elac {

namespace {

PlaneVector standard_chord(const Segment& seg, double u0, double u1, const QuadratureConfig& q) {
    if (seg.kind == ParamKind::arc) return chord_by_arc(seg.params, u0, u1, q);
    return chord_by_theta(seg.params, u0, u1, q);
}

void check_ts(std::span<const double> ts) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!(ts[i] >= 0.0 && ts[i] <= 1.0)) throw DomainError("sample parameters must lie in [0, 1]");
        if (i > 0 && ts[i] < ts[i - 1]) throw DomainError("sample parameters must be ascending");
    }
}

BatchOutcome solve_one(const BatchItem& item, const SolverConfig& cfg) {
    BatchOutcome out;
    try {
        out.segment = solve_g1(item.problem, item.alpha, cfg);
    } catch (const Error& e) {
        out.error = e.kind();
        out.message = e.what();
    }
    return out;
}

}  // namespace

std::vector<PlanePoint> sample_segment_serial(const Segment& seg, std::span<const double> ts,
                                              const QuadratureConfig& q) {
    check_ts(ts);
    std::vector<PlanePoint> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(evaluate_segment(seg, t, q).point);
    return out;
}

std::vector<PlanePoint> sample_segment_parallel(const Segment& seg, std::span<const double> ts,
                                                const QuadratureConfig& q) {
    check_ts(ts);
    const std::size_t n = ts.size();
    std::vector<PlaneVector> panel(n);
    const double u0 = seg.param_at(0.0);
    const long long count = static_cast<long long>(n);
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < count; ++i) {
        try {
            const double from = i == 0 ? u0 : seg.param_at(ts[i - 1]);
            panel[i] = standard_chord(seg, from, seg.param_at(ts[i]), q);
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                message = e.what();
            }
        }
    }
    if (failed) throw QuadratureError("panel integration failed: " + message, INFINITY);

    std::vector<PlanePoint> out(n);
    PlaneVector acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc = acc + panel[i];
        out[i] = seg.a + seg.transform.apply(acc);
    }
    return out;
}

std::vector<BatchOutcome> solve_batch_serial(std::span<const BatchItem> items, const SolverConfig& cfg) {
    std::vector<BatchOutcome> out;
    out.reserve(items.size());
    for (const auto& it : items) out.push_back(solve_one(it, cfg));
    return out;
}

std::vector<BatchOutcome> solve_batch_parallel(std::span<const BatchItem> items, const SolverConfig& cfg) {
    std::vector<BatchOutcome> out(items.size());
    const long long count = static_cast<long long>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) out[i] = solve_one(items[i], cfg);
    return out;
}

int kernel_threads() { return omp_get_max_threads(); }

}  // namespace elac
