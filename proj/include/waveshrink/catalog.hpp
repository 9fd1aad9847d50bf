#pragma once
// Concrete test functions with verified class membership, their coefficient
// trees, and the two-point bump alternatives.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bump.hpp"
#include "coeff_tree.hpp"
#include "holder.hpp"
#include "transform.hpp"
#include "wavelet.hpp"

namespace waveshrink {

struct TestFunction {
    std::string name;
    HolderClass declared_class;
    WaveletSpec spec;                  // basis used for the true tree
    std::function<double(double)> fn;  // analytic definition on [0,1]
    std::vector<double> samples;       // fn on the 2^J_max grid
    CoefficientTree true_tree;         // fine-grid analysis truncated to J_max
    std::vector<double> projected;     // synthesize(true_tree); the estimand
    bool membership_checked = false;
    double seminorm_value = 0.0;
    int seminorm_grid = 0;
};

namespace detail {

inline std::vector<double> sample_grid(const std::function<double(double)>& f, int levels) {
    const std::size_t n = std::size_t(1) << levels;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(double(i) / double(n));
    return out;
}

inline CoefficientTree truncate_tree(const CoefficientTree& t, int j_max) {
    if (j_max > t.max_level) throw std::invalid_argument("truncate_tree: deeper than source");
    CoefficientTree out(t.coarse_level, j_max);
    out.coarse = t.coarse;
    for (int j = t.coarse_level; j < j_max; ++j) out.level(j) = t.level(j);
    return out;
}

// Skewed triangle wave, period 1: 0 -> 1 on [0, 1/3], back to 0 on [1/3, 1].
// The skew avoids symmetry cancellations against symmetric wavelets.
inline double skew_wave(double t) {
    t -= std::floor(t);
    return (t < 1.0 / 3.0) ? 3.0 * t : 1.5 * (1.0 - t);
}

// Takagi-type sum: dense alpha-roughness at every scale.
inline double takagi_shape(double x, double alpha, int terms = 20) {
    double acc = 0.0;
    double scale = 1.0;
    double arg = x;
    const double decay = std::pow(2.0, -alpha);
    for (int i = 0; i < terms; ++i) {
        acc += scale * skew_wave(arg);
        scale *= decay;
        arg *= 2.0;
    }
    return acc;
}

}  // namespace detail

/// Builds a TestFunction from an analytic definition: samples at 2^J_max,
/// true tree from analysis on a 16x finer grid, membership verified on the
/// check grid with a 1e-3 safety factor.
inline TestFunction make_test_function(const std::string& name,
                                       std::function<double(double)> fn,
                                       const HolderClass& cls, int j_max,
                                       const WaveletSpec& spec, int check_grid = 4096) {
    if (j_max < spec.coarse_level)
        throw std::invalid_argument("make_test_function: J_max below coarse level");
    TestFunction tf;
    tf.name = name;
    tf.declared_class = cls;
    tf.spec = spec;
    tf.fn = std::move(fn);
    tf.samples = detail::sample_grid(tf.fn, j_max);
    const auto fine = detail::sample_grid(tf.fn, j_max + 4);
    tf.true_tree = detail::truncate_tree(analyze(fine, spec), j_max);
    tf.projected = synthesize(tf.true_tree, spec);

    const auto check = detail::sample_grid(tf.fn, detail::log2_exact(std::size_t(check_grid)));
    tf.seminorm_value = holder_seminorm(check, cls.alpha);
    tf.seminorm_grid = check_grid;
    if (tf.seminorm_value > cls.bound * (1.0 + 1e-3))
        throw std::invalid_argument("make_test_function: '" + name +
                                    "' fails the Holder membership check");
    tf.membership_checked = true;
    return tf;
}

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = {
        "zero", "constant", "ramp", "alpha_cusp", "smooth_bump", "two_point_bumped", "takagi"};
    return names;
}

/// Named members of F(alpha, M). Amplitudes are normalized from the shape's
/// measured grid seminorm so membership holds with margin.
inline TestFunction catalog(const std::string& name, const HolderClass& cls, int j_max,
                            const WaveletSpec& spec, int check_grid = 4096) {
    const double alpha = cls.alpha;
    const double m = cls.bound;
    auto measured = [&](const std::function<double(double)>& shape) {
        const auto s = detail::sample_grid(shape, detail::log2_exact(std::size_t(check_grid)));
        return holder_seminorm(s, alpha);
    };

    if (name == "zero")
        return make_test_function(name, [](double) { return 0.0; }, cls, j_max, spec, check_grid);
    if (name == "constant")
        return make_test_function(name, [](double) { return 1.0; }, cls, j_max, spec, check_grid);
    if (name == "ramp") {
        const double slope = (alpha <= 1.0) ? 0.9 * m : m;
        return make_test_function(
            name, [slope](double x) { return slope * x; }, cls, j_max, spec, check_grid);
    }
    if (name == "alpha_cusp") {
        const double x0 = 0.5;
        auto shape = [alpha, x0](double x) { return std::pow(std::fabs(x - x0), alpha); };
        double amp = m;
        if (alpha > 1.0) {
            const double s = measured(shape);
            amp = (s > 0.0) ? 0.9 * m / s : m;
        }
        return make_test_function(
            name, [shape, amp](double x) { return amp * shape(x); }, cls, j_max, spec,
            check_grid);
    }
    if (name == "smooth_bump") {
        auto shape = [](double x) {
            const double u = (x - 0.5) / 0.35;
            return (std::fabs(u) < 1.0) ? std::exp(1.0 - 1.0 / (1.0 - u * u)) : 0.0;
        };
        const double s = measured(shape);
        const double amp = 0.9 * m / s;
        return make_test_function(
            name, [shape, amp](double x) { return amp * shape(x); }, cls, j_max, spec,
            check_grid);
    }
    if (name == "two_point_bumped") {
        // Bumped member of a canonical two-point pair, at a fixed scale.
        const double beta = 32.0;
        const BumpFunction g = make_bump(alpha, 0.9 * m, 2.0);
        const double kappa = std::pow(beta, -alpha);
        return make_test_function(
            name, [g, beta, kappa](double x) { return kappa * g(beta * (x - 0.5)); }, cls,
            j_max, spec, check_grid);
    }
    if (name == "takagi") {
        auto shape = [alpha](double x) { return detail::takagi_shape(x, alpha); };
        const double s = measured(shape);
        const double amp = 0.9 * m / s;
        return make_test_function(
            name, [shape, amp](double x) { return amp * shape(x); }, cls, j_max, spec,
            check_grid);
    }
    throw std::invalid_argument("catalog: unknown function '" + name + "'");
}

/// Two-point pair from the superefficiency lower-bound construction.
struct TwoPointPair {
    TestFunction base;    // f_{n,0} = f0
    TestFunction bumped;  // f_{n,1} = f0 + gamma^-1 g(beta (x - x0))
    double gamma_n = 0.0;
    double beta_n = 0.0;
    double b_n = 0.0;     // B_n
    double rho_n = 0.0;   // n * int (f1 - f0)^2, quadrature value
};

inline TwoPointPair two_point_pair(const TestFunction& f0, double x0, long long n, double b_n,
                                   const HolderClass& cls, double m_prime,
                                   const WaveletSpec& spec, double bump_half_width = 2.0) {
    if (!(b_n > 1.0)) throw std::invalid_argument("two_point_pair: need B_n > 1");
    const double log_b = std::log(b_n);
    if (!(log_b < double(n))) throw std::invalid_argument("two_point_pair: need log B_n < n");
    if (!(m_prime < cls.bound))
        throw std::invalid_argument("two_point_pair: need M' < M");

    const double alpha = cls.alpha;
    const double ratio = double(n) / log_b;
    const double gamma_n = std::pow(ratio, alpha / (1.0 + 2.0 * alpha));
    const double beta_n = std::pow(ratio, 1.0 / (1.0 + 2.0 * alpha));

    const BumpFunction g = make_bump(alpha, cls.bound - m_prime, bump_half_width);
    const double support = bump_half_width / beta_n;
    if (x0 - support < 0.0 || x0 + support > 1.0)
        throw std::invalid_argument("two_point_pair: bump support exits [0,1]");

    const int j_max = f0.true_tree.max_level;
    auto base_fn = f0.fn;
    auto bump_term = [g, gamma_n, beta_n, x0](double x) {
        return (1.0 / gamma_n) * g(beta_n * (x - x0));
    };
    auto f1_fn = [base_fn, bump_term](double x) { return base_fn(x) + bump_term(x); };

    TwoPointPair pair;
    pair.base = f0;
    pair.bumped = make_test_function(f0.name + "+bump", f1_fn, cls, j_max, spec,
                                     f0.seminorm_grid > 0 ? f0.seminorm_grid : 4096);
    pair.gamma_n = gamma_n;
    pair.beta_n = beta_n;
    pair.b_n = b_n;

    // rho_n = n * int (f1-f0)^2 by quadrature over the bump support.
    const int qn = 1 << 14;
    double acc = 0.0;
    const double lo = x0 - support;
    const double h = 2.0 * support / double(qn);
    for (int i = 0; i <= qn; ++i) {
        const double v = bump_term(lo + double(i) * h);
        acc += (i == 0 || i == qn) ? 0.5 * v * v : v * v;
    }
    pair.rho_n = double(n) * acc * h;
    return pair;
}

}  // namespace waveshrink
