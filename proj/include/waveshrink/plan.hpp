#pragma once
// Resolution-level planning for the block estimators.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace waveshrink {

/// Levels and block length governing the estimators:
///   J       smallest integer with 2^J >= n
///   J_star  smallest integer with 2^{J_star} >= 1/c_n, clamped up to j0
///   J_upper smallest integer with 2^{J_upper} >= log(n)/c_n
///   J_prime largest integer with 2^{J_prime} < n^{1/(1+2 alpha)} (optional)
///   L       ceil(log n); all logarithms are natural.
struct LevelPlan {
    int j0 = 0;
    int J = 0;
    int J_star = 0;
    int J_upper = 0;
    std::optional<int> J_prime;
    int block_length = 1;       // L
    bool blockjs_regime = false;  // c_n <= log(n)/n

    long long n = 0;
    double c_n = 0.0;
};

namespace detail {

inline int smallest_level_at_least(double target) {
    int j = 0;
    while (std::ldexp(1.0, j) < target) {
        ++j;
        if (j > 62) throw std::invalid_argument("level plan: target too large");
    }
    return j;
}

}  // namespace detail

inline LevelPlan plan_levels(long long n, double c_n, std::optional<double> alpha, int j0) {
    if (n < 2) throw std::invalid_argument("plan_levels: n must be >= 2");
    if (!(c_n > 0.0 && c_n <= 0.5)) throw std::invalid_argument("plan_levels: c_n must be in (0, 1/2]");
    if (j0 < 0) throw std::invalid_argument("plan_levels: j0 must be >= 0");

    LevelPlan p;
    p.j0 = j0;
    p.n = n;
    p.c_n = c_n;
    const double log_n = std::log(double(n));
    p.J = detail::smallest_level_at_least(double(n));
    p.J_star = detail::smallest_level_at_least(1.0 / c_n);
    if (p.J_star < j0) p.J_star = j0;
    p.J_upper = detail::smallest_level_at_least(log_n / c_n);
    p.block_length = int(std::ceil(log_n));
    p.blockjs_regime = (c_n <= log_n / double(n));
    if (alpha) {
        if (*alpha <= 0.0) throw std::invalid_argument("plan_levels: alpha must be > 0");
        // Largest jp with 2^jp < n^{1/(1+2 alpha)}, i.e. jp (1+2 alpha) < log2 n.
        // Comparing exponents keeps the strict inequality exact at dyadic ties.
        const double l2n = std::log2(double(n));
        const double s = 1.0 + 2.0 * *alpha;
        int jp = 0;
        while (double(jp + 1) * s < l2n) ++jp;
        p.J_prime = jp;
    }
    return p;
}

/// Contiguous horizontal blocks [start, start+len) covering `level_size`
/// positions: full blocks of length L, then one remainder block.
struct Block {
    std::int64_t start = 0;
    std::int64_t length = 0;
};

inline std::vector<Block> horizontal_blocks(std::int64_t level_size, int block_length) {
    if (level_size <= 0 || block_length <= 0)
        throw std::invalid_argument("horizontal_blocks: bad sizes");
    std::vector<Block> blocks;
    std::int64_t start = 0;
    while (start < level_size) {
        const std::int64_t len = std::min<std::int64_t>(block_length, level_size - start);
        blocks.push_back({start, len});
        start += len;
    }
    return blocks;
}

}  // namespace waveshrink
