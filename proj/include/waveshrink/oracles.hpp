#pragma once
// Executable oracle checks behind the estimator guarantees: the threshold
// constant, the coefficient-energy sandwich, the block-risk bounds under
// Monte Carlo, truncated-second-moment monotonicity, and the coefficient
// decay of cusp functions. Shared by the lemma-suite experiment and the
// acceptance suite.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "geometry.hpp"
#include "risk.hpp"
#include "rng.hpp"
#include "shrinkage.hpp"
#include "stats.hpp"
#include "transform.hpp"

namespace waveshrink {

struct OracleOutcome {
    std::string name;
    bool passed = false;
    double metric = 0.0;   // check-specific summary value
    double margin = 0.0;   // distance to the failure boundary (>= 0 passes)
    std::string detail;
};

/// lambda_* = root of lambda - log lambda - 1 = 2, within 1e-5 of 4.50524.
inline OracleOutcome check_threshold_constant() {
    const double v = solve_threshold_constant(2.0);
    const double err = std::fabs(v - 4.50524);
    return {"threshold_constant", err <= 1e-5, v, 1e-5 - err,
            "root of lambda - log(lambda) - 1 = 2"};
}

/// Energy-sandwich check on random decaying trees and windows: the
/// window quadrature of the detail expansion lies between the S1 and S2
/// coefficient energies within `tol`.
inline OracleOutcome check_energy_sandwich(int pairs_per_basis, std::uint64_t seed,
                                           double tol = 1e-6) {
    int violations = 0;
    double worst = -1e300;  // largest excursion outside the sandwich
    int count = 0;
    for (const std::string basis : {"haar", "daub4"}) {
        const WaveletSpec spec = build_basis(basis, 2);
        for (int trial = 0; trial < pairs_per_basis; ++trial, ++count) {
            const std::uint64_t stream = std::uint64_t(trial) + (basis == "haar" ? 0u : 1u << 20);
            GaussianStream g(seed, stream);
            const int j_max = 8;
            CoefficientTree tree(2, j_max);
            std::uint64_t gi = 0;
            for (int j = 2; j < j_max; ++j)
                for (double& v : tree.level(j)) v = g.at(gi++) * std::pow(2.0, -double(j));
            const auto w0 = philox_at(seed ^ 0xABCDEF, stream, 0);
            const double x0 = 0.2 + 0.6 * bits_to_open_unit(w0[0], w0[1]);
            const double c_n = 0.03 + 0.25 * bits_to_open_unit(w0[2], w0[3]);
            const Window w = make_window(x0, c_n);

            const NormBounds nb = restricted_norm_bounds(tree, w, spec, false);
            CoefficientTree ext(2, j_max + 4);
            for (int j = 2; j < j_max; ++j) ext.level(j) = tree.level(j);
            const auto fine = synthesize(ext, spec);
            const double integral = window_integral_sq(fine, w);
            const double excursion =
                std::fmax(nb.lower - integral, integral - nb.upper);
            worst = std::fmax(worst, excursion);
            if (excursion > tol) ++violations;
        }
    }
    OracleOutcome o;
    o.name = "energy_sandwich";
    o.passed = violations == 0;
    o.metric = worst;
    o.margin = tol - worst;
    o.detail = std::to_string(count) + " (tree, window) pairs across haar and daub4";
    return o;
}

/// Monte Carlo block risk of the James-Stein rule against the oracle bound.
/// Returns the worst margin (bound + 3 SE - risk) over the configuration
/// grid; negative margin means a violated cell.
inline OracleOutcome check_block_oracle(const std::vector<int>& block_lengths, int reps,
                                        std::uint64_t seed) {
    const double lambda = solve_threshold_constant(2.0);
    const double sigma2 = 1.0;
    double worst_margin = 1e300;
    std::string worst_cell;
    std::uint64_t stream = 0;

    for (const int len : block_lengths) {
        // 20 configurations: zero, single spikes, dense at several scales.
        std::vector<std::vector<double>> configs;
        configs.push_back(std::vector<double>(std::size_t(len), 0.0));
        for (const double s : {0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 4.5, 7.0, 10.0}) {
            std::vector<double> t(std::size_t(len), 0.0);
            t[0] = s;
            configs.push_back(t);
        }
        for (const double s : {0.05, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0})
            configs.push_back(std::vector<double>(std::size_t(len), s));

        for (const auto& theta : configs) {
            ++stream;
            std::vector<double> sq_errs(std::size_t(reps), 0.0);
            std::vector<double> ys(theta.size());
            for (int r = 0; r < reps; ++r) {
                GaussianStream g(seed, (stream << 24) + std::uint64_t(r));
                double s_sq = 0.0;
                for (std::size_t i = 0; i < theta.size(); ++i) {
                    ys[i] = theta[i] + g.at(i);
                    s_sq += ys[i] * ys[i];
                }
                const double factor = james_stein_factor(s_sq, lambda, double(len), sigma2);
                double err = 0.0;
                for (std::size_t i = 0; i < theta.size(); ++i) {
                    const double d = factor * ys[i] - theta[i];
                    err += d * d;
                }
                sq_errs[std::size_t(r)] = err;
            }
            const auto ms = mean_stderr(sq_errs);
            const double bound =
                oracle_bound(theta, lambda, double(len), sigma2, OracleVariant::SumBoundCalibrated);
            const double margin = bound + 3.0 * ms.stderr_ - ms.mean;
            if (margin < worst_margin) {
                worst_margin = margin;
                worst_cell = "L=" + std::to_string(len) +
                             " theta0=" + std::to_string(theta[0]);
            }
        }
    }
    OracleOutcome o;
    o.name = "block_oracle_sum_bound";
    o.passed = worst_margin >= 0.0;
    o.metric = worst_margin;
    o.margin = worst_margin;
    o.detail = "tightest cell: " + worst_cell;
    return o;
}

/// Per-coefficient bound with |theta_i| <= c (all-equal configuration, the
/// maximizing direction): risk per coefficient <= 8c^2 + 2 lambda e^{-L}.
inline OracleOutcome check_bounded_coefficient_oracle(const std::vector<int>& block_lengths,
                                                      const std::vector<double>& cs, int reps,
                                                      std::uint64_t seed) {
    const double lambda = solve_threshold_constant(2.0);
    double worst_margin = 1e300;
    std::string worst_cell;
    std::uint64_t stream = 0;
    for (const int len : block_lengths) {
        for (const double c : cs) {
            ++stream;
            std::vector<double> sq_errs(std::size_t(reps), 0.0);
            for (int r = 0; r < reps; ++r) {
                GaussianStream g(seed ^ 0x5eed, (stream << 24) + std::uint64_t(r));
                double s_sq = 0.0;
                std::vector<double> ys(std::size_t(len), 0.0);
                for (int i = 0; i < len; ++i) {
                    ys[std::size_t(i)] = c + g.at(std::uint64_t(i));
                    s_sq += ys[std::size_t(i)] * ys[std::size_t(i)];
                }
                const double factor = james_stein_factor(s_sq, lambda, double(len), 1.0);
                const double d = factor * ys[0] - c;
                sq_errs[std::size_t(r)] = d * d;
            }
            const auto ms = mean_stderr(sq_errs);
            const double bound = oracle_bound({}, lambda, double(len), 1.0, OracleVariant::PerCoefficient, c);
            const double margin = bound + 3.0 * ms.stderr_ - ms.mean;
            if (margin < worst_margin) {
                worst_margin = margin;
                worst_cell = "L=" + std::to_string(len) + " c=" + std::to_string(c);
            }
        }
    }
    OracleOutcome o;
    o.name = "block_oracle_per_coefficient";
    o.passed = worst_margin >= 0.0;
    o.metric = worst_margin;
    o.margin = worst_margin;
    o.detail = "tightest cell: " + worst_cell;
    return o;
}

/// Monotonicity of E_theta y^2 1{|y|>c} in |theta| over the stated grid,
/// plus the exact c = 0 identity.
inline OracleOutcome check_truncated_moment_monotone() {
    double min_step = 1e300;
    for (const double c : {0.5, 1.0, 2.0, 4.0}) {
        double prev = truncated_second_moment(0.0, c);
        for (int i = 1; i <= 20; ++i) {
            const double theta = 0.25 * double(i);
            const double cur = truncated_second_moment(theta, c);
            min_step = std::fmin(min_step, cur - prev);
            prev = cur;
        }
    }
    double worst_identity = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double theta = 0.25 * double(i);
        worst_identity = std::fmax(
            worst_identity, std::fabs(truncated_second_moment(theta, 0.0) - (1.0 + theta * theta)));
    }
    OracleOutcome o;
    o.name = "truncated_moment_monotone";
    o.passed = min_step >= -1e-10 && worst_identity <= 1e-10;
    o.metric = min_step;
    o.margin = std::fmin(min_step + 1e-10, 1e-10 - worst_identity);
    o.detail = "min increment " + std::to_string(min_step) + ", c=0 identity error " +
               std::to_string(worst_identity);
    return o;
}

struct DecaySlope {
    double alpha = 0.0;
    double slope = 0.0;   // fitted log2 slope of per-level max |theta|
    double target = 0.0;  // -(1/2 + alpha)
};

/// Per-level max coefficient decay of the cusp member: fitted log2 slope
/// over levels [level_lo, level_hi].
inline DecaySlope cusp_decay_slope(double alpha, int level_lo, int level_hi,
                                   const std::string& basis = "daub4") {
    const WaveletSpec spec = build_basis(basis, 2);
    const HolderClass cls(alpha, 1.0);
    const TestFunction f = catalog("alpha_cusp", cls, level_hi + 1, spec);
    std::vector<std::pair<double, double>> pts;
    for (int j = level_lo; j <= level_hi; ++j) {
        double mx = 0.0;
        for (const double v : f.true_tree.level(j)) mx = std::fmax(mx, std::fabs(v));
        pts.push_back({std::exp2(double(j)), mx});
    }
    const RateFit fit = rate_fit(pts);  // slope in ln-ln equals log2-log2 slope
    return {alpha, fit.slope, -(0.5 + alpha)};
}

inline OracleOutcome check_cusp_decay(double tol = 0.1) {
    double worst = 0.0;
    std::string det;
    for (const double alpha : {0.5, 1.0}) {
        const DecaySlope s = cusp_decay_slope(alpha, 4, 12);
        const double err = std::fabs(s.slope - s.target);
        worst = std::fmax(worst, err);
        det += "alpha=" + std::to_string(alpha) + " slope=" + std::to_string(s.slope) + " ";
    }
    OracleOutcome o;
    o.name = "cusp_coefficient_decay";
    o.passed = worst <= tol;
    o.metric = worst;
    o.margin = tol - worst;
    o.detail = det;
    return o;
}

}  // namespace waveshrink
