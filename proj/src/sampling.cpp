#include "elac/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "elac/kernels.hpp"

namespace elac {

namespace {

double point_chord_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
    const PlaneVector ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    const double u = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return distance(p, a + u * ab);
}

// Merge sorted parameter lists, dropping near-duplicates. Forced values win over grid ones.
std::vector<double> merge(std::vector<double> grid, const std::vector<double>& forced) {
    constexpr double eps = 1e-12;
    std::erase_if(grid, [&](double t) {
        return std::any_of(forced.begin(), forced.end(), [&](double f) { return std::abs(t - f) < eps; });
    });
    grid.insert(grid.end(), forced.begin(), forced.end());
    std::sort(grid.begin(), grid.end());
    return grid;
}

double t_of_param(const Segment& seg, double param) {
    const double u = (param - seg.start) / (seg.end - seg.start);
    return seg.swap_flag ? 1.0 - u : u;
}

}  // namespace

std::vector<double> special_parameters(const Segment& seg) {
    std::vector<double> out;
    std::optional<double> p;
    if (seg.kind == ParamKind::theta && seg.contains_cusp) p = cusp_theta(seg.params);
    if (seg.kind == ParamKind::arc && seg.contains_inflection) p = inflection_s(seg.params);
    if (p) {
        const double t = t_of_param(seg, *p);
        if (t > 0.0 && t < 1.0) out.push_back(t);
    }
    return out;
}

Polyline sample_polyline(const Segment& seg, const SampleSpec& spec) {
    const std::vector<double> forced = special_parameters(seg);
    Polyline line;
    if (spec.mode == SampleSpec::Mode::count) {
        const int n = std::max(spec.n, 1);
        std::vector<double> grid(n + 1);
        for (int i = 0; i <= n; ++i) grid[i] = i == n ? 1.0 : double(i) / n;
        line.ts = merge(std::move(grid), forced);
        line.points = sample_segment_parallel(seg, line.ts, spec.quad);
        return line;
    }

    // Chord mode: split every edge whose midpoint strays further than chord_tol from it.
    std::vector<double> grid(17);
    for (int i = 0; i <= 16; ++i) grid[i] = i / 16.0;
    line.ts = merge(std::move(grid), forced);
    line.points = sample_segment_parallel(seg, line.ts, spec.quad);
    std::vector<bool> settled(line.ts.size() - 1, false);
    for (int level = 0; level < 40; ++level) {
        std::vector<std::size_t> open;
        std::vector<double> mids;
        for (std::size_t i = 0; i + 1 < line.ts.size(); ++i) {
            if (settled[i] || line.ts[i + 1] - line.ts[i] < 1e-12) continue;
            open.push_back(i);
            mids.push_back(0.5 * (line.ts[i] + line.ts[i + 1]));
        }
        if (open.empty()) break;
        const auto mp = sample_segment_parallel(seg, mids, spec.quad);

        Polyline next;
        std::vector<bool> next_settled;
        std::size_t k = 0;
        for (std::size_t i = 0; i + 1 < line.ts.size(); ++i) {
            next.ts.push_back(line.ts[i]);
            next.points.push_back(line.points[i]);
            const bool probed = k < open.size() && open[k] == i;
            if (probed && point_chord_distance(mp[k], line.points[i], line.points[i + 1]) >= spec.chord_tol) {
                next.ts.push_back(mids[k]);
                next.points.push_back(mp[k]);
                next_settled.push_back(false);
                next_settled.push_back(false);
            } else {
                next_settled.push_back(true);
            }
            if (probed) ++k;
        }
        next.ts.push_back(line.ts.back());
        next.points.push_back(line.points.back());
        line = std::move(next);
        settled = std::move(next_settled);
    }
    return line;
}

Polyline sample_polyline(const Chain& chain, const SampleSpec& spec) {
    Polyline out;
    for (std::size_t i = 0; i < chain.segments.size(); ++i) {
        const Polyline part = sample_polyline(chain.segments[i], spec);
        for (std::size_t j = (i == 0 ? 0 : 1); j < part.ts.size(); ++j) {
            out.ts.push_back(double(i) + part.ts[j]);
            out.points.push_back(part.points[j]);
        }
    }
    return out;
}

double polyline_deviation(const Polyline& line, const std::vector<double>& ts, const std::vector<PlanePoint>& points) {
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        auto it = std::upper_bound(line.ts.begin(), line.ts.end(), ts[i]);
        std::size_t hi = std::min<std::size_t>(it - line.ts.begin(), line.ts.size() - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        worst = std::max(worst, point_chord_distance(points[i], line.points[lo], line.points[hi]));
    }
    return worst;
}

}  // namespace elac
