#pragma once
// The shrinkage estimators: level-by-level horizontal block James-Stein
// (BlockJS), the hybrid soft/vertical/horizontal rule for a given
// neighborhood, the single-block superefficient estimator, and the
// local-constant rule built from one scaling coefficient.
//
// All rules treat sigma^2 = 1/n as known and never threshold the coarse
// coefficients except where the single-block rule explicitly includes them.

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coeff_tree.hpp"
#include "geometry.hpp"
#include "neighborhood.hpp"
#include "plan.hpp"
#include "sequence.hpp"
#include "shrinkage.hpp"
#include "transform.hpp"
#include "wavelet.hpp"

namespace waveshrink {

namespace detail {

// Shrinks the positions [start, start+len) of a level in place with the
// James-Stein factor; the threshold uses the actual block cardinality.
inline void shrink_block_in_place(std::vector<double>& level, std::int64_t start,
                                  std::int64_t len, double lambda, double sigma2) {
    double s_sq = 0.0;
    for (std::int64_t i = start; i < start + len; ++i)
        s_sq += level[std::size_t(i)] * level[std::size_t(i)];
    const double factor = james_stein_factor(s_sq, lambda, double(len), sigma2);
    for (std::int64_t i = start; i < start + len; ++i) level[std::size_t(i)] *= factor;
}

}  // namespace detail

struct BlockJsInfo {
    int levels_shrunk = 0;
    bool truncated = false;  // observation shallower than the plan's J
};

/// BlockJS: coarse passed through; levels j0 <= j < J partitioned into
/// horizontal blocks of length ceil(log n) and shrunk with lambda_*;
/// levels j >= J set to zero.
inline CoefficientTree block_js(const ObservedSequence& obs, const ThresholdConstants& consts,
                                BlockJsInfo* info = nullptr) {
    const long long n = obs.noise_level;
    const double sigma2 = 1.0 / double(n);
    const LevelPlan plan = plan_levels(n, 0.5, std::nullopt, obs.coarse_level());

    CoefficientTree out = obs.values;
    const int j_stop = std::min(plan.J, obs.max_level());
    for (int j = obs.coarse_level(); j < j_stop; ++j) {
        auto& level = out.level(j);
        for (const Block& b : horizontal_blocks(std::int64_t(level.size()), plan.block_length))
            detail::shrink_block_in_place(level, b.start, b.length, consts.lambda_star, sigma2);
    }
    for (int j = j_stop; j < obs.max_level(); ++j) {
        for (double& v : out.level(j)) v = 0.0;
    }
    if (info) {
        info->levels_shrunk = j_stop - obs.coarse_level();
        info->truncated = plan.J > obs.max_level();
    }
    return out;
}

enum class HybridBranch { Soft, Vertical, Horizontal, Zero };

/// The (j,k) -> branch assignment of the hybrid rule for a given plan and
/// window, over detail levels [j0, j_max).
inline std::map<int, std::vector<HybridBranch>> hybrid_branch_map(const LevelPlan& plan,
                                                                  const NeighborhoodSpec& nb,
                                                                  const WaveletSpec& spec,
                                                                  int j_max) {
    std::map<int, std::vector<HybridBranch>> branches;
    const int vertical_lo = plan.J_star;
    const int vertical_hi = std::min(plan.J_upper, j_max);
    IndexSet h_star;
    if (vertical_lo < vertical_hi) {
        h_star = neighborhood_index_sets(nb, vertical_lo, vertical_hi, spec).touching;
    }
    for (int j = plan.j0; j < j_max; ++j) {
        auto& row = branches[j];
        row.assign(std::size_t(1) << j, HybridBranch::Zero);
        for (std::int64_t k = 0; k < (std::int64_t(1) << j); ++k) {
            HybridBranch b;
            if (j >= plan.J)
                b = HybridBranch::Zero;
            else if (j >= plan.J_upper)
                b = HybridBranch::Horizontal;
            else if (h_star.contains(j, k))
                b = HybridBranch::Vertical;
            else
                b = HybridBranch::Soft;
            row[std::size_t(k)] = b;
        }
    }
    return branches;
}

struct HybridInfo {
    LevelPlan plan;
    std::size_t vertical_card = 0;  // Card(H^*)
    bool truncated = false;
};

/// Hybrid estimator for neighborhoods with c_n > log(n)/n:
///   (a) soft threshold at sqrt(2 log(n)/n) for j0 <= j < J^* off the
///       vertical block, (b) one James-Stein shrink over the vertical block
///       H^* = union of window-touching indices for J_* <= j < J^*,
///   (c) horizontal blocks of length ceil(log n) for J^* <= j < J,
///   (d) zero for j >= J. Coarse passed through.
inline CoefficientTree hybrid_estimate(const ObservedSequence& obs, const NeighborhoodSpec& nb,
                                       const ThresholdConstants& consts, const WaveletSpec& spec,
                                       HybridInfo* info = nullptr) {
    const long long n = obs.noise_level;
    const double sigma2 = 1.0 / double(n);
    const LevelPlan plan = plan_levels(n, nb.c_n, std::nullopt, obs.coarse_level());
    if (plan.blockjs_regime)
        throw std::invalid_argument("hybrid_estimate: c_n <= log(n)/n; use block_js");

    CoefficientTree out = obs.values;

    // Vertical block H^*.
    const int vertical_lo = plan.J_star;
    const int vertical_hi = std::min(plan.J_upper, obs.max_level());
    std::vector<LevelPosition> h_star;
    if (vertical_lo < vertical_hi) {
        const auto sets = neighborhood_index_sets(nb, vertical_lo, vertical_hi, spec);
        h_star.assign(sets.touching.entries.begin(), sets.touching.entries.end());
    }
    double s_v_sq = 0.0;
    for (const auto& e : h_star) {
        const double y = obs.values.level(e.level)[std::size_t(e.position)];
        s_v_sq += y * y;
    }
    const double v_factor =
        h_star.empty() ? 0.0
                       : james_stein_factor(s_v_sq, consts.lambda_star, double(h_star.size()),
                                            sigma2);

    // Branches (a), (b), (d) below J_upper; (c) horizontal blocks above.
    const int soft_hi = std::min({plan.J_upper, plan.J, obs.max_level()});
    for (int j = obs.coarse_level(); j < soft_hi; ++j) {
        for (double& v : out.level(j)) v = soft_threshold(v, consts.soft_level);
    }
    for (const auto& e : h_star) {
        if (e.level >= soft_hi) continue;
        auto& v = out.level(e.level)[std::size_t(e.position)];
        v = v_factor * obs.values.level(e.level)[std::size_t(e.position)];
    }
    const int horiz_hi = std::min(plan.J, obs.max_level());
    for (int j = soft_hi; j < horiz_hi; ++j) {
        auto& level = out.level(j);
        for (const Block& b : horizontal_blocks(std::int64_t(level.size()), plan.block_length))
            detail::shrink_block_in_place(level, b.start, b.length, consts.lambda_star, sigma2);
    }
    for (int j = horiz_hi; j < obs.max_level(); ++j) {
        for (double& v : out.level(j)) v = 0.0;
    }
    if (info) {
        info->plan = plan;
        info->vertical_card = h_star.size();
        info->truncated = plan.J > obs.max_level();
    }
    return out;
}

/// Single-block superefficient estimator: all coarse coefficients and all
/// details up to level J' (largest with 2^J' < n^{1/(1+2 alpha)}) form one
/// block shrunk with lambda solving lambda - log lambda - 1 = 2D; everything
/// above J' is zeroed.
inline CoefficientTree superefficient_estimate(const ObservedSequence& obs, double d,
                                               double alpha) {
    if (!(d > 0.0)) throw std::invalid_argument("superefficient_estimate: D must be > 0");
    if (!(alpha > 0.0)) throw std::invalid_argument("superefficient_estimate: alpha must be > 0");
    const long long n = obs.noise_level;
    const double sigma2 = 1.0 / double(n);
    const LevelPlan plan = plan_levels(n, 0.5, alpha, obs.coarse_level());
    const int j_prime = *plan.J_prime;
    if (j_prime < obs.coarse_level())
        throw std::invalid_argument("superefficient_estimate: J' below coarse level (n too small)");
    const int detail_hi = std::min(j_prime + 1, obs.max_level());

    double s_sq = 0.0;
    for (double v : obs.values.coarse) s_sq += v * v;
    for (int j = obs.coarse_level(); j < detail_hi; ++j)
        for (double v : obs.values.level(j)) s_sq += v * v;

    // Block cardinality: 2^{j0} coarse + details j0..J' = 2^{J'+1} in total.
    const double block_len = std::ldexp(1.0, j_prime + 1);
    const double lambda = solve_threshold_constant(2.0 * d);
    const double factor = james_stein_factor(s_sq, lambda, block_len, sigma2);

    CoefficientTree out = zeros_like(obs.values);
    for (std::size_t k = 0; k < obs.values.coarse.size(); ++k)
        out.coarse[k] = factor * obs.values.coarse[k];
    for (int j = obs.coarse_level(); j < detail_hi; ++j) {
        const auto& src = obs.values.level(j);
        auto& dst = out.level(j);
        for (std::size_t k = 0; k < src.size(); ++k) dst[k] = factor * src[k];
    }
    return out;
}

struct LocalConstantResult {
    double value = 0.0;     // delta_n
    int level = 0;          // j_n
    std::int64_t position = 0;
    double sigma_n = 0.0;
    double threshold = 0.0;
};

/// Local-constant rule: one normalized scaling coefficient at level j_n
/// (the largest with 2^{j_n} <= (n / log B_n)^{1/(1+2 alpha)}) whose support
/// covers x0, soft-thresholded at sigma_n sqrt(2 log B_n). The estimate is
/// the constant delta_n on the window. Requires a basis whose father
/// wavelet has a vanishing first moment (coif6).
inline LocalConstantResult local_constant_estimate(const ObservedSequence& obs,
                                                   const NeighborhoodSpec& nb, double b_n,
                                                   double alpha, const WaveletSpec& spec) {
    if (!(b_n > 1.0)) throw std::invalid_argument("local_constant_estimate: need B_n > 1");
    if (!(alpha > 0.0)) throw std::invalid_argument("local_constant_estimate: alpha must be > 0");
    const long long n = obs.noise_level;
    const double log_b = std::log(b_n);
    const double bound = std::log2(double(n) / log_b) / (1.0 + 2.0 * alpha);
    const int j_n = int(std::floor(bound));
    if (j_n < obs.coarse_level())
        throw std::invalid_argument("local_constant_estimate: j_n below coarse level");
    if (j_n > obs.max_level())
        throw std::invalid_argument("local_constant_estimate: j_n above available levels");

    const auto fathers = father_coefficients_at(obs.values, spec, j_n);
    const auto k = std::int64_t(std::floor(nb.x0 * std::ldexp(1.0, j_n)));
    const double y_tilde = std::sqrt(std::ldexp(1.0, j_n)) * fathers[std::size_t(k)];
    LocalConstantResult r;
    r.level = j_n;
    r.position = k;
    r.sigma_n = std::sqrt(std::ldexp(1.0, j_n) / double(n));
    r.threshold = r.sigma_n * std::sqrt(2.0 * log_b);
    r.value = soft_threshold(y_tilde, r.threshold);
    return r;
}

/// Term-by-term soft thresholding at sqrt(2 log(n)/n) for all detail levels
/// below J; zero above; coarse passed through.
inline CoefficientTree soft_estimate(const ObservedSequence& obs,
                                     const ThresholdConstants& consts) {
    const LevelPlan plan = plan_levels(obs.noise_level, 0.5, std::nullopt, obs.coarse_level());
    CoefficientTree out = obs.values;
    const int j_stop = std::min(plan.J, obs.max_level());
    for (int j = obs.coarse_level(); j < j_stop; ++j)
        for (double& v : out.level(j)) v = soft_threshold(v, consts.soft_level);
    for (int j = j_stop; j < obs.max_level(); ++j)
        for (double& v : out.level(j)) v = 0.0;
    return out;
}

}  // namespace waveshrink
