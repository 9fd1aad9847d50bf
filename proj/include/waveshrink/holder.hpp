#pragma once
// Holder smoothness classes and the grid seminorm used to verify membership.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace waveshrink {

/// F(alpha, M): |f^(k)(x) - f^(k)(y)| <= M |x-y|^{alpha-k} with k the
/// greatest integer strictly less than alpha.
struct HolderClass {
    double alpha = 1.0;
    double bound = 1.0;  // M

    HolderClass() = default;
    HolderClass(double a, double m) : alpha(a), bound(m) {
        if (!(alpha > 0.0)) throw std::invalid_argument("HolderClass: alpha must be > 0");
        if (!(bound > 0.0)) throw std::invalid_argument("HolderClass: M must be > 0");
    }

    int k() const { return int(std::ceil(alpha)) - 1; }
};

/// Grid Holder seminorm with explicit grid spacing: the supremum over grid
/// pairs of |D^k f(x) - D^k f(y)| / |x-y|^{alpha-k}, with D^k the normalized
/// k-th forward difference. This is a lower bound on the true seminorm;
/// callers should report the spacing used.
inline double holder_seminorm_spaced(std::span<const double> samples, double alpha, double h) {
    if (!(alpha > 0.0)) throw std::invalid_argument("holder_seminorm: alpha must be > 0");
    if (!(h > 0.0)) throw std::invalid_argument("holder_seminorm: spacing must be > 0");
    const int k = int(std::ceil(alpha)) - 1;
    if (std::ssize(samples) < k + 2)
        throw std::invalid_argument("holder_seminorm: too few samples");

    // Normalized k-th forward differences at base points 0..n-1-k.
    std::vector<double> d(samples.begin(), samples.end());
    for (int pass = 0; pass < k; ++pass) {
        for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = (d[i + 1] - d[i]) / h;
        d.pop_back();
    }
    const double expo = alpha - double(k);
    // For each lag, one sliding max of |d[i+lag]-d[i]|; weights depend only
    // on the lag, so the pair supremum needs no per-pair pow().
    double best = 0.0;
    const std::size_t m = d.size();
    for (std::size_t lag = 1; lag < m; ++lag) {
        double gap = 0.0;
        for (std::size_t i = 0; i + lag < m; ++i)
            gap = std::fmax(gap, std::fabs(d[i + lag] - d[i]));
        const double ratio = gap / std::pow(double(lag) * h, expo);
        best = std::fmax(best, ratio);
    }
    return best;
}

/// Grid seminorm for samples on the uniform grid over [0,1].
inline double holder_seminorm(std::span<const double> samples, double alpha) {
    return holder_seminorm_spaced(samples, alpha, 1.0 / double(samples.size()));
}

}  // namespace waveshrink
