#pragma once
// Trapezoid quadrature on the synthesis grid. Grid functions are periodic
// on [0,1] with values at x_i = i 2^-G; windows snap to the grid with the
// partial-cell contribution weighted proportionally.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dyadic.hpp"
#include "neighborhood.hpp"

namespace waveshrink {

namespace detail {

// Integral over [a,b] of the piecewise-linear interpolant of `values`
// (periodic), computed cell by cell with overlap weights.
inline double window_trapezoid(const std::vector<double>& values, double a, double b) {
    const std::size_t n = values.size();
    const double h = 1.0 / double(n);
    if (b < a) throw std::invalid_argument("window_trapezoid: empty window");
    auto cell_of = [&](double x) {
        auto i = std::int64_t(std::floor(x * double(n)));
        if (i < 0) i = 0;
        if (i >= std::int64_t(n)) i = std::int64_t(n) - 1;
        return i;
    };
    const std::int64_t i0 = cell_of(a);
    const std::int64_t i1 = cell_of(b);
    double acc = 0.0;
    for (std::int64_t i = i0; i <= i1; ++i) {
        const double lo = double(i) * h;
        const double hi = lo + h;
        const double overlap = std::fmin(hi, b) - std::fmax(lo, a);
        if (overlap <= 0.0) continue;
        const double left = values[std::size_t(i)];
        const double right = values[std::size_t(i + 1) % n];
        acc += overlap * 0.5 * (left + right);
    }
    return acc;
}

}  // namespace detail

/// Integral of the squared grid function over the window.
inline double window_integral_sq(const std::vector<double>& values, const Window& w) {
    double acc = 0.0;
    const std::size_t n = values.size();
    std::vector<double> sq;  // lazily squared only over the needed band
    const double h = 1.0 / double(n);
    auto idx0 = std::int64_t(std::floor(w.a * double(n)));
    auto idx1 = std::int64_t(std::floor(w.b * double(n)));
    if (idx0 < 0) idx0 = 0;
    if (idx1 >= std::int64_t(n)) idx1 = std::int64_t(n) - 1;
    for (std::int64_t i = idx0; i <= idx1; ++i) {
        const double lo = double(i) * h;
        const double hi = lo + h;
        const double overlap = std::fmin(hi, w.b) - std::fmax(lo, w.a);
        if (overlap <= 0.0) continue;
        const double l = values[std::size_t(i)];
        const double r = values[std::size_t(i + 1) % n];
        acc += overlap * 0.5 * (l * l + r * r);
    }
    return acc;
}

/// Integral of an arbitrary grid function over the window.
inline double window_integral(const std::vector<double>& values, const Window& w) {
    return detail::window_trapezoid(values, w.a, w.b);
}

/// Integral of W_n(x) f(x)^2 over the kernel's support, with
/// W_n(x) = w((x - x0)/c_n)/c_n evaluated at grid points.
inline double weighted_integral_sq(const std::vector<double>& values, const NeighborhoodSpec& nb) {
    if (!nb.kernel) throw std::invalid_argument("weighted_integral_sq: kernel required");
    const Kernel& ker = *nb.kernel;
    const std::size_t n = values.size();
    const double h = 1.0 / double(n);
    const Window w = make_window(nb.x0, ker.half_support * nb.c_n);
    auto weight_at = [&](std::size_t i) {
        const double x = double(i % n) * h;
        return ker.w((x - nb.x0) / nb.c_n) / nb.c_n;
    };
    auto idx0 = std::int64_t(std::floor(w.a * double(n)));
    auto idx1 = std::int64_t(std::floor(w.b * double(n)));
    if (idx0 < 0) idx0 = 0;
    if (idx1 >= std::int64_t(n)) idx1 = std::int64_t(n) - 1;
    double acc = 0.0;
    for (std::int64_t i = idx0; i <= idx1; ++i) {
        const double lo = double(i) * h;
        const double hi = lo + h;
        const double overlap = std::fmin(hi, w.b) - std::fmax(lo, w.a);
        if (overlap <= 0.0) continue;
        const double l = values[std::size_t(i)];
        const double r = values[std::size_t(i + 1) % n];
        const double wl = weight_at(std::size_t(i));
        const double wr = (std::size_t(i) + 1 == n) ? ker.w((1.0 - nb.x0) / nb.c_n) / nb.c_n
                                                    : weight_at(std::size_t(i) + 1);
        acc += overlap * 0.5 * (wl * l * l + wr * r * r);
    }
    return acc;
}

/// Checks that a kernel integrates to 1 on a fine grid.
inline double kernel_mass(const Kernel& ker, int grid = 1 << 16) {
    double acc = 0.0;
    const double h = 2.0 * ker.half_support / double(grid);
    for (int i = 0; i <= grid; ++i) {
        const double u = -ker.half_support + double(i) * h;
        const double v = ker.w(u);
        acc += (i == 0 || i == grid) ? 0.5 * v : v;
    }
    return acc * h;
}

}  // namespace waveshrink
