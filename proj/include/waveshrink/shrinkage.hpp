#pragma once
// Scalar and block shrinkage rules.

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace waveshrink {

/// Unique root lambda >= 1 of lambda - log(lambda) - 1 = c, by Newton
/// iteration on the increasing branch with a bisection fallback.
inline double solve_threshold_constant(double c) {
    if (c < 0.0) throw std::invalid_argument("solve_threshold_constant: c must be >= 0");
    if (c == 0.0) return 1.0;
    auto f = [c](double x) { return x - std::log(x) - 1.0 - c; };
    double lo = 1.0;
    double hi = c + 3.0;  // f(hi) = c + 3 - log(c+3) - 1 - c = 2 - log(c+3) ... widen below
    while (f(hi) < 0.0) hi *= 2.0;
    double x = hi;
    for (int it = 0; it < 200; ++it) {
        const double fx = f(x);
        if (fx > 0.0)
            hi = x;
        else
            lo = x;
        const double deriv = 1.0 - 1.0 / x;
        double next = (deriv > 0.0) ? x - fx / deriv : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) < 1e-14 * x) return next;
        x = next;
    }
    return x;
}

struct ThresholdConstants {
    double lambda_star = 0.0;   // root of lambda - log lambda - 1 = 2
    double soft_level = 0.0;    // sqrt(2 log(n) / n)
    double lambda_custom = 0.0; // root for lambda - log lambda - 1 = 2D (0 if unused)

    static ThresholdConstants for_noise_level(long long n, double d = 0.0) {
        if (n < 2) throw std::invalid_argument("ThresholdConstants: n must be >= 2");
        ThresholdConstants c;
        c.lambda_star = solve_threshold_constant(2.0);
        c.soft_level = std::sqrt(2.0 * std::log(double(n)) / double(n));
        if (d > 0.0) c.lambda_custom = solve_threshold_constant(2.0 * d);
        return c;
    }
};

inline double soft_threshold(double y, double t) {
    if (t < 0.0) throw std::invalid_argument("soft_threshold: t must be >= 0");
    const double mag = std::fabs(y) - t;
    return (mag > 0.0) ? std::copysign(mag, y) : 0.0;
}

/// Common shrinkage factor (1 - lambda L sigma^2 / S^2)_+ for a block with
/// sum of squares s_sq. Always in [0, 1).
inline double james_stein_factor(double s_sq, double lambda, double block_len, double sigma2) {
    const double threshold = lambda * block_len * sigma2;
    if (s_sq <= threshold) return 0.0;
    return 1.0 - threshold / s_sq;
}

/// James-Stein shrinkage of a whole block.
inline std::vector<double> james_stein_block(std::span<const double> ys, double lambda,
                                             double block_len, double sigma2) {
    if (ys.empty()) throw std::invalid_argument("james_stein_block: empty block");
    if (lambda < 1.0) throw std::invalid_argument("james_stein_block: lambda must be >= 1");
    if (sigma2 <= 0.0) throw std::invalid_argument("james_stein_block: sigma2 must be > 0");
    double s_sq = 0.0;
    for (double y : ys) s_sq += y * y;
    const double factor = james_stein_factor(s_sq, lambda, block_len, sigma2);
    std::vector<double> out(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) out[i] = factor * ys[i];
    return out;
}

}  // namespace waveshrink
