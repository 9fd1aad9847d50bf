#pragma once
// Gaussian and chi-square tail machinery plus small-sample summaries.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace waveshrink {

inline constexpr double kPi = 3.141592653589793238462643383279503;

inline double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi);
}

// P(Z > x) for Z ~ N(0,1), accurate far into the tails.
inline double normal_upper_tail(double x) {
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// E[y^2 1{|y| > c}] for y ~ N(theta, 1), in closed form:
//   (theta^2+1) (Qbar(c-theta) + Qbar(c+theta))
//     + (c+theta) phi(c-theta) + (c-theta) phi(c+theta)
// where Qbar is the upper tail of N(0,1). Absolute error is at the level of
// erfc/exp rounding, far below 1e-10.
inline double truncated_second_moment(double theta, double c) {
    if (c < 0.0) throw std::invalid_argument("truncated_second_moment: c must be >= 0");
    const double a = c - theta;
    const double b = c + theta;
    return (theta * theta + 1.0) * (normal_upper_tail(a) + normal_upper_tail(b)) +
           (c + theta) * normal_pdf(a) + (c - theta) * normal_pdf(b);
}

namespace detail {

// Regularized lower incomplete gamma P(a,x) by series expansion (x < a+1).
inline double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by Lentz continued fraction (x >= a+1).
inline double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace detail

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
inline double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

// P(chi^2_k > x).
inline double chi_square_upper_tail(double k, double x) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * k, 0.5 * x);
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t count = 0;
};

// Sample mean and standard error, accumulated in index order so that the
// result does not depend on how the values were produced.
inline MeanStderr mean_stderr(std::span<const double> xs) {
    if (xs.size() < 2) throw std::invalid_argument("mean_stderr: need at least 2 values");
    double s = 0.0;
    for (double x : xs) s += x;
    const double m = s / double(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    const double var = ss / double(xs.size() - 1);
    return {m, std::sqrt(var / double(xs.size())), xs.size()};
}

}  // namespace waveshrink
