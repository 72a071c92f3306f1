#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "elac/errors.hpp"

namespace elac {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
};

struct QuadratureResult {
    std::complex<double> value;
    double error = 0.0;
    int subdivisions = 0;
};

namespace detail {

// Kronrod 15-point abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    std::complex<double> value;
    double error;
    double abs_value;  // integral of |f|, for the roundoff floor
    friend bool operator<(const Panel& l, const Panel& r) { return l.error < r.error; }
};

template <class F>
Panel gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const std::complex<double> fc = f(c);
    std::complex<double> kronrod = fc * wgk[7];
    std::complex<double> gauss = fc * wg[3];
    double abs_sum = std::abs(fc) * wgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const std::complex<double> f1 = f(c - dx);
        const std::complex<double> f2 = f(c + dx);
        kronrod += (f1 + f2) * wgk[j];
        abs_sum += (std::abs(f1) + std::abs(f2)) * wgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * wg[j / 2];
    }
    const double ah = std::abs(h);
    return {a, b, kronrod * h, std::abs((kronrod - gauss) * h), abs_sum * ah};
}

}  // namespace detail

// Globally adaptive G7/K15 on [a, b]. The panel with the largest error estimate is bisected until
// the summed estimate drops below abs_tol (or a roundoff floor relative to the integral of |f|).
// Interior breakpoints in `splits` start as panel edges so singular points never sit inside a panel.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureConfig& cfg,
                           std::span<const double> splits = {}) {
    QuadratureResult out;
    if (a == b) return out;
    std::vector<double> edges{a};
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    std::vector<double> inner;
    for (double s : splits)
        if (s > lo && s < hi) inner.push_back(s);
    std::sort(inner.begin(), inner.end());
    if (a > b) std::reverse(inner.begin(), inner.end());
    edges.insert(edges.end(), inner.begin(), inner.end());
    edges.push_back(b);

    std::priority_queue<detail::Panel> heap;
    std::complex<double> total = 0.0;
    double error = 0.0;
    double abs_total = 0.0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        auto p = detail::gk15(f, edges[k], edges[k + 1]);
        total += p.value;
        error += p.error;
        abs_total += p.abs_value;
        heap.push(p);
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    std::vector<detail::Panel> frozen;  // too narrow to split further
    int subdivisions = 0;
    while (error > std::max(cfg.abs_tol, 50.0 * eps * abs_total) && !heap.empty()) {
        if (subdivisions >= cfg.max_subdivisions)
            throw QuadratureError("quadrature tolerance not met within max_subdivisions", error);
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            frozen.push_back(worst);
            continue;
        }
        auto left = detail::gk15(f, worst.a, mid);
        auto right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++subdivisions;
    }
    // Re-sum from panels; the running totals drift after many updates.
    total = 0.0;
    error = 0.0;
    for (; !heap.empty(); heap.pop()) {
        total += heap.top().value;
        error += heap.top().error;
    }
    for (const auto& p : frozen) {
        total += p.value;
        error += p.error;
    }
    out.value = total;
    out.error = error;
    out.subdivisions = subdivisions;
    return out;
}

}  // namespace elac
