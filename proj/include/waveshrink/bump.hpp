#pragma once
// Plateau bump construction: g equals a positive constant on [-1,1], is
// supported in [-A,A], rises and falls through a polynomial smoothstep of
// order ceil(alpha)+2, has unit L2 norm, and keeps its Holder seminorm
// within a stated budget.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "holder.hpp"

namespace waveshrink {

namespace detail {

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

// Generalized smoothstep with N continuous derivatives at both endpoints:
// S_N(t) = t^{N+1} sum_k C(N+k,k) C(2N+1,N-k) (-t)^k, S_N(0)=0, S_N(1)=1.
inline double smoothstep(int n, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    double acc = 0.0;
    double tp = 1.0;
    for (int k = 0; k <= n; ++k) {
        acc += binomial(n + k, k) * binomial(2 * n + 1, n - k) * tp *
               ((k % 2) ? -1.0 : 1.0);
        tp *= t;
    }
    return std::pow(t, double(n + 1)) * acc;
}

}  // namespace detail

/// The constructed bump. Callable on all of R; zero outside [-A, A].
struct BumpFunction {
    double half_width = 2.0;       // A
    double plateau = 0.0;          // value on [-1, 1]
    int smooth_order = 3;          // smoothstep order
    double alpha = 1.0;
    double seminorm_budget = 0.0;  // M - M'
    double grid_seminorm = 0.0;    // measured at construction
    int check_grid = 0;

    double operator()(double x) const {
        const double ax = std::fabs(x);
        if (ax >= half_width) return 0.0;
        if (ax <= 1.0) return plateau;
        return plateau * detail::smoothstep(smooth_order, (half_width - ax) / (half_width - 1.0));
    }
};

/// Builds the bump for a seminorm budget (the class-gap constant M - M')
/// and support half-width A > 1. Throws if A is too small for the budget.
inline BumpFunction make_bump(double alpha, double budget, double half_width,
                              int check_grid = 4096) {
    if (!(alpha > 0.0)) throw std::invalid_argument("make_bump: alpha must be > 0");
    if (!(budget > 0.0)) throw std::invalid_argument("make_bump: seminorm budget must be > 0");
    if (!(half_width > 1.0))
        throw std::invalid_argument("make_bump: need A > 1 for the plateau construction");

    BumpFunction g;
    g.half_width = half_width;
    g.alpha = alpha;
    g.seminorm_budget = budget;
    g.smooth_order = int(std::ceil(alpha)) + 2;
    g.check_grid = check_grid;

    // Unit-plateau mass Q = 2 + 2(A-1) int_0^1 S^2, then plateau = 1/sqrt(Q).
    const int qn = 1 << 12;
    double ssq = 0.0;
    for (int i = 0; i <= qn; ++i) {
        const double t = double(i) / double(qn);
        const double v = detail::smoothstep(g.smooth_order, t);
        ssq += (i == 0 || i == qn) ? 0.5 * v * v : v * v;
    }
    ssq /= double(qn);
    const double mass = 2.0 + 2.0 * (half_width - 1.0) * ssq;
    g.plateau = 1.0 / std::sqrt(mass);

    // Verify the seminorm budget on the check grid.
    std::vector<double> samples(static_cast<std::size_t>(check_grid), 0.0);
    const double h = 2.0 * half_width / double(check_grid);
    for (int i = 0; i < check_grid; ++i) samples[std::size_t(i)] = g(-half_width + double(i) * h);
    g.grid_seminorm = holder_seminorm_spaced(samples, alpha, h);
    if (g.grid_seminorm > budget * (1.0 + 1e-3))
        throw std::invalid_argument(
            "make_bump: support half-width too small for the seminorm budget");
    return g;
}

/// Quadrature of g^2 over [-A, A] (used by tests and the two-point pair).
inline double bump_l2_mass(const BumpFunction& g, int grid = 1 << 14) {
    double acc = 0.0;
    const double h = 2.0 * g.half_width / double(grid);
    for (int i = 0; i <= grid; ++i) {
        const double x = -g.half_width + double(i) * h;
        const double v = g(x);
        acc += (i == 0 || i == grid) ? 0.5 * v * v : v * v;
    }
    return acc * h;
}

}  // namespace waveshrink
