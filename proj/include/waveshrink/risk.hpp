#pragma once
// Monte Carlo risk engine over shrinking neighborhoods, the analytic
// oracle bounds it is checked against, and log-log rate fits.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "catalog.hpp"
#include "estimators.hpp"
#include "neighborhood.hpp"
#include "quadrature.hpp"
#include "sequence.hpp"
#include "stats.hpp"

namespace waveshrink {

enum class EstimatorKind {
    Soft,
    BlockJs,
    Hybrid,
    Superefficient,
    LocalConstant,
    Zero,      // oracle: all-zero tree
    Identity,  // oracle: returns the true tree
};

struct EstimatorSetup {
    EstimatorKind kind = EstimatorKind::BlockJs;
    double alpha = 1.0;        // Superefficient / LocalConstant
    double d = 0.5;            // Superefficient: root target 2D
    double b_n_power = 0.5;    // LocalConstant: B_n = n^{b_n_power}
    std::string name() const;
};

inline EstimatorKind estimator_by_name(const std::string& s) {
    if (s == "soft") return EstimatorKind::Soft;
    if (s == "blockjs") return EstimatorKind::BlockJs;
    if (s == "hybrid") return EstimatorKind::Hybrid;
    if (s == "superefficient") return EstimatorKind::Superefficient;
    if (s == "local_constant") return EstimatorKind::LocalConstant;
    if (s == "zero") return EstimatorKind::Zero;
    if (s == "identity") return EstimatorKind::Identity;
    throw std::invalid_argument("unknown estimator '" + s + "'");
}

inline std::string EstimatorSetup::name() const {
    switch (kind) {
        case EstimatorKind::Soft: return "soft";
        case EstimatorKind::BlockJs: return "blockjs";
        case EstimatorKind::Hybrid: return "hybrid";
        case EstimatorKind::Superefficient: return "superefficient";
        case EstimatorKind::LocalConstant: return "local_constant";
        case EstimatorKind::Zero: return "zero";
        case EstimatorKind::Identity: return "identity";
    }
    return "?";
}

/// Applies an estimator to one observation and returns grid samples of the
/// estimate on the function's synthesis grid.
inline std::vector<double> apply_estimator(const EstimatorSetup& setup,
                                           const ObservedSequence& obs,
                                           const TestFunction& truth,
                                           const NeighborhoodSpec& nb, const WaveletSpec& spec) {
    switch (setup.kind) {
        case EstimatorKind::Soft: {
            const auto consts = ThresholdConstants::for_noise_level(obs.noise_level);
            return synthesize(soft_estimate(obs, consts), spec);
        }
        case EstimatorKind::BlockJs: {
            const auto consts = ThresholdConstants::for_noise_level(obs.noise_level);
            return synthesize(block_js(obs, consts), spec);
        }
        case EstimatorKind::Hybrid: {
            const auto consts = ThresholdConstants::for_noise_level(obs.noise_level);
            return synthesize(hybrid_estimate(obs, nb, consts, spec), spec);
        }
        case EstimatorKind::Superefficient:
            return synthesize(superefficient_estimate(obs, setup.d, setup.alpha), spec);
        case EstimatorKind::LocalConstant: {
            const double b_n = std::pow(double(obs.noise_level), setup.b_n_power);
            const auto r = local_constant_estimate(obs, nb, b_n, setup.alpha, spec);
            return std::vector<double>(obs.values.coefficient_count(), r.value);
        }
        case EstimatorKind::Zero:
            return std::vector<double>(obs.values.coefficient_count(), 0.0);
        case EstimatorKind::Identity:
            return truth.projected;
    }
    throw std::logic_error("apply_estimator: unhandled kind");
}

struct RiskReport {
    double mean = 0.0;
    double stderr_ = 0.0;
    int reps = 0;
    long long n = 0;
    std::string estimator;
    std::uint64_t seed = 0;
};

namespace detail {

// Per-replication risks, parallelized over replications when threads > 1.
// Values land in replication order and are reduced sequentially, so the
// result is identical for every thread count.
inline std::vector<double> replicate(const std::function<double(int)>& one_rep, int reps,
                                     int threads) {
    std::vector<double> risks(static_cast<std::size_t>(reps), 0.0);
    if (threads <= 1) {
        for (int r = 0; r < reps; ++r) risks[std::size_t(r)] = one_rep(r);
        return risks;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= reps) return;
                risks[std::size_t(r)] = one_rep(r);
            }
        });
    }
    for (auto& th : pool) th.join();
    return risks;
}

}  // namespace detail

/// Neighborhood risk: mean over replications of the window-averaged squared
/// error (1/|window|) int_window (fhat - f)^2, by trapezoid quadrature on
/// the synthesis grid. Deterministic given (seed, reps).
inline RiskReport neighborhood_risk(const EstimatorSetup& setup, const TestFunction& f,
                                    const NeighborhoodSpec& nb, long long n, int reps,
                                    std::uint64_t seed, int threads = 1) {
    if (reps < 2) throw std::invalid_argument("neighborhood_risk: reps must be >= 2");
    const WaveletSpec& spec = f.spec;
    const Window w = nb.window();
    auto one_rep = [&](int r) {
        const auto obs = sample_observation(f.true_tree, n, seed, std::uint64_t(r));
        const auto fitted = apply_estimator(setup, obs, f, nb, spec);
        std::vector<double> err(fitted.size());
        for (std::size_t i = 0; i < fitted.size(); ++i) err[i] = fitted[i] - f.projected[i];
        return window_integral_sq(err, w) / w.length();
    };
    const auto risks = detail::replicate(one_rep, reps, threads);
    const auto ms = mean_stderr(risks);
    return {ms.mean, ms.stderr_, reps, n, setup.name(), seed};
}

/// Weighted risk: E int W_n(x) (fhat - f)^2 dx. The uniform kernel is by
/// definition the neighborhood risk and routes through the same code path.
inline RiskReport weighted_risk(const EstimatorSetup& setup, const TestFunction& f,
                                const NeighborhoodSpec& nb, long long n, int reps,
                                std::uint64_t seed, int threads = 1) {
    if (!nb.kernel) throw std::invalid_argument("weighted_risk: kernel required");
    if (std::fabs(kernel_mass(*nb.kernel) - 1.0) > 1e-8)
        throw std::invalid_argument("weighted_risk: kernel does not integrate to 1");
    if (nb.kernel->name == "uniform") return neighborhood_risk(setup, f, nb, n, reps, seed, threads);
    if (reps < 2) throw std::invalid_argument("weighted_risk: reps must be >= 2");
    const WaveletSpec& spec = f.spec;
    auto one_rep = [&](int r) {
        const auto obs = sample_observation(f.true_tree, n, seed, std::uint64_t(r));
        const auto fitted = apply_estimator(setup, obs, f, nb, spec);
        std::vector<double> err(fitted.size());
        for (std::size_t i = 0; i < fitted.size(); ++i) err[i] = fitted[i] - f.projected[i];
        return weighted_integral_sq(err, nb);
    };
    const auto risks = detail::replicate(one_rep, reps, threads);
    const auto ms = mean_stderr(risks);
    return {ms.mean, ms.stderr_, reps, n, setup.name() + "/" + nb.kernel->name, seed};
}

enum class OracleVariant { SumBound, SumBoundCalibrated, PerCoefficient };

/// Block-risk oracle bounds:
///   SumBound:           min(sum theta^2, lambda L sigma^2)
///                       + 2 lambda exp(-(1/2)(lambda - log lambda - 1) L) sigma^2
///   SumBoundCalibrated: same with exp(-L) (lambda at the lambda_* root)
///   PerCoefficient:     8 c^2 + 2 lambda exp(-L) sigma^2.
inline double oracle_bound(const std::vector<double>& theta_block, double lambda, double len,
                           double sigma2, OracleVariant variant,
                           std::optional<double> c = std::nullopt) {
    if (lambda < 1.0) throw std::invalid_argument("oracle_bound: lambda must be >= 1");
    double theta_sq = 0.0;
    for (double t : theta_block) theta_sq += t * t;
    const double head = std::fmin(theta_sq, lambda * len * sigma2);
    switch (variant) {
        case OracleVariant::SumBound:
            return head + 2.0 * lambda *
                              std::exp(-0.5 * (lambda - std::log(lambda) - 1.0) * len) * sigma2;
        case OracleVariant::SumBoundCalibrated:
            return head + 2.0 * lambda * std::exp(-len) * sigma2;
        case OracleVariant::PerCoefficient:
            if (!c) throw std::invalid_argument("oracle_bound: per-coefficient variant needs the bound c");
            return 8.0 * (*c) * (*c) + 2.0 * lambda * std::exp(-len) * sigma2;
    }
    throw std::logic_error("oracle_bound: unhandled variant");
}

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double slope_stderr = 0.0;
    std::vector<std::pair<double, double>> points;  // (n, risk)
};

/// OLS of log(risk) on log(n); the slope is the empirical rate exponent.
inline RateFit rate_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw std::invalid_argument("rate_fit: need at least 3 points");
    const auto m = double(points.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [n, risk] : points) {
        if (!(risk > 0.0)) throw std::invalid_argument("rate_fit: risks must be positive");
        sx += std::log(n);
        sy += std::log(risk);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [n, risk] : points) {
        const double dx = std::log(n) - mx;
        const double dy = std::log(risk) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("rate_fit: degenerate n grid");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
    if (points.size() > 2)
        fit.slope_stderr = std::sqrt(std::fmax(0.0, ss_res / (m - 2.0)) / sxx);
    fit.points = points;
    return fit;
}

}  // namespace waveshrink
