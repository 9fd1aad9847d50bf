#pragma once
// Periodized discrete wavelet analysis/synthesis between dyadic-grid samples
// and coefficient trees.
//
// Conventions. For samples s of length 2^J on the grid x_i = i 2^-J, the
// fine-scale coefficients are v = 2^{-J/2} s, and the cascade
//   a_j[k] = sum_t h[t] a_{j+1}[(2k+t) mod 2^{j+1}]
//   d_j[k] = sum_t g[t] a_{j+1}[(2k+t) mod 2^{j+1}]
// runs from level J down to j0. The map is exactly orthogonal at every
// level (even-lag autocorrelations of h vanish, and wrapped lags stay
// even), so coefficient energy equals the grid mean square of the input,
// the Riemann approximation of the squared L2 norm on [0,1].
//
// With this orientation the synthesized (j,k) basis function vanishes
// outside [k 2^-j, (k+N) 2^-j] mod 1 with N = taps - 1, which is the
// support convention used by the index-set geometry.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "coeff_tree.hpp"
#include "dyadic.hpp"
#include "wavelet.hpp"

namespace waveshrink {

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline int log2_exact(std::size_t n) {
    int j = 0;
    while ((std::size_t(1) << j) < n) ++j;
    return j;
}

// One analysis step: input of size 2m -> approx and detail of size m each.
inline void cascade_down(const std::vector<double>& in, const WaveletSpec& spec,
                         std::vector<double>& approx, std::vector<double>& det) {
    const std::size_t m = in.size() / 2;
    const std::size_t mask = in.size() - 1;
    const int taps = spec.taps();
    approx.assign(m, 0.0);
    det.assign(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        double lo = 0.0, hi = 0.0;
        for (int t = 0; t < taps; ++t) {
            const double x = in[(2 * k + std::size_t(t)) & mask];
            lo += spec.low_pass[std::size_t(t)] * x;
            hi += spec.high_pass[std::size_t(t)] * x;
        }
        approx[k] = lo;
        det[k] = hi;
    }
}

// One synthesis step (adjoint of cascade_down).
inline std::vector<double> cascade_up(const std::vector<double>& approx,
                                      const std::vector<double>& det,
                                      const WaveletSpec& spec) {
    const std::size_t m = approx.size();
    std::vector<double> out(2 * m, 0.0);
    const std::size_t mask = out.size() - 1;
    const int taps = spec.taps();
    for (std::size_t k = 0; k < m; ++k) {
        const double a = approx[k];
        const double d = det[k];
        for (int t = 0; t < taps; ++t) {
            out[(2 * k + std::size_t(t)) & mask] +=
                spec.low_pass[std::size_t(t)] * a + spec.high_pass[std::size_t(t)] * d;
        }
    }
    return out;
}

}  // namespace detail

/// Full analysis of 2^J samples down to the spec's coarse level.
inline CoefficientTree analyze(const std::vector<double>& samples, const WaveletSpec& spec) {
    if (!detail::is_power_of_two(samples.size()))
        throw std::invalid_argument("analyze: sample count must be a power of two");
    const int j_max = detail::log2_exact(samples.size());
    const int j0 = spec.coarse_level;
    if (j_max < j0) throw std::invalid_argument("analyze: fewer than 2^j0 samples");

    CoefficientTree tree(j0, j_max);
    std::vector<double> a = samples;
    const double scale = std::ldexp(1.0, -j_max) * std::sqrt(double(samples.size()));
    // scale = 2^{-J/2}
    for (double& v : a) v *= scale;

    std::vector<double> next, det;
    for (int j = j_max - 1; j >= j0; --j) {
        detail::cascade_down(a, spec, next, det);
        tree.level(j) = det;
        a.swap(next);
    }
    tree.coarse = a;
    return tree;
}

/// Exact inverse of analyze; returns 2^{J_max} samples.
inline std::vector<double> synthesize(const CoefficientTree& tree, const WaveletSpec& spec) {
    if (tree.coarse_level != spec.coarse_level)
        throw std::invalid_argument("synthesize: tree coarse level does not match spec");
    if (tree.coarse.size() != (std::size_t(1) << tree.coarse_level))
        throw std::invalid_argument("synthesize: coarse size mismatch");
    std::vector<double> a = tree.coarse;
    for (int j = tree.coarse_level; j < tree.max_level; ++j) {
        const auto& det = tree.level(j);
        if (det.size() != (std::size_t(1) << j))
            throw std::invalid_argument("synthesize: level size mismatch");
        a = detail::cascade_up(a, det, spec);
    }
    const double scale = std::sqrt(double(a.size()));  // 2^{J/2}
    for (double& v : a) v *= scale;
    return a;
}

/// Scaling (father) coefficients at the given level, reconstructed from the
/// coarse block and the detail levels below it.
inline std::vector<double> father_coefficients_at(const CoefficientTree& tree,
                                                  const WaveletSpec& spec, int level) {
    if (level < tree.coarse_level || level > tree.max_level)
        throw std::invalid_argument("father_coefficients_at: level out of range");
    std::vector<double> a = tree.coarse;
    for (int j = tree.coarse_level; j < level; ++j)
        a = detail::cascade_up(a, tree.level(j), spec);
    return a;
}

/// Support interval of the (j,k) basis function, per the periodized
/// convention: [k 2^-j, (k+N) 2^-j] mod 1.
inline DyadicSupport support_interval(int j, std::int64_t k, const WaveletSpec& spec,
                                      BasisKind kind) {
    if (j < spec.coarse_level) throw std::invalid_argument("support_interval: j below j0");
    if (k < 0 || k >= (std::int64_t(1) << j))
        throw std::invalid_argument("support_interval: position out of range");
    const int n = (kind == BasisKind::Mother) ? spec.support_mother : spec.support_father;
    return DyadicSupport{j, k, n};
}

/// Grid mean square, the Riemann approximation of the squared L2 norm.
inline double grid_norm_sq(const std::vector<double>& samples) {
    double s = 0.0;
    for (double v : samples) s += v * v;
    return s / double(samples.size());
}

}  // namespace waveshrink
