// Parallel kernels against their serial references: dense sampling and batch solving.

#include <chrono>
#include <cstdio>
#include <numbers>
#include <vector>

#include "elac/kernels.hpp"

using namespace elac;

namespace {

template <class F>
double best_ms(F&& f, int reps = 5) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - t0;
        best = std::min(best, d.count());
    }
    return best;
}

}  // namespace

int main() {
    const double deg = std::numbers::pi / 180.0;
    const Segment seg = solve_g1({{0, 0}, {3, 0}, unit_from_angle(60 * deg), unit_from_angle(-30 * deg)}, -1.5);
    std::vector<double> ts(4001);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = double(i) / (ts.size() - 1);

    std::vector<BatchItem> items;
    for (int i = 0; i < 64; ++i) {
        const double a = (20 + i % 50) * deg, c = -(15 + (i * 7) % 50) * deg;
        items.push_back({{{0, 0}, {3, 0}, unit_from_angle(a), unit_from_angle(c)}, -2.5 + 0.07 * i});
    }

    std::printf("threads: %d\n", kernel_threads());
    const double sp = best_ms([&] { sample_segment_parallel(seg, ts); });
    const double ss = best_ms([&] { sample_segment_serial(seg, ts); });
    std::printf("sample 4001 points   parallel %8.2f ms   serial %8.2f ms   x%.2f\n", sp, ss, ss / sp);
    const double bp = best_ms([&] { solve_batch_parallel(items); }, 3);
    const double bs = best_ms([&] { solve_batch_serial(items); }, 3);
    std::printf("solve 64 problems    parallel %8.2f ms   serial %8.2f ms   x%.2f\n", bp, bs, bs / bp);
    return 0;
}
