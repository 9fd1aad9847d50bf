#pragma once
// Coefficient trees: coarse scaling coefficients at level j0 plus detail
// coefficients per level j0 <= j < J_max. Storage is 0-based in position.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace waveshrink {

struct CoefficientTree {
    int coarse_level = 0;  // j0
    int max_level = 0;     // J_max; detail levels are [j0, J_max)
    std::vector<double> coarse;
    std::vector<std::vector<double>> detail;  // detail[j - j0] has 2^j entries

    CoefficientTree() = default;

    CoefficientTree(int j0, int j_max) : coarse_level(j0), max_level(j_max) {
        if (j0 < 0 || j_max < j0) throw std::invalid_argument("CoefficientTree: bad levels");
        coarse.assign(std::size_t(1) << j0, 0.0);
        detail.resize(std::size_t(j_max - j0));
        for (int j = j0; j < j_max; ++j)
            detail[std::size_t(j - j0)].assign(std::size_t(1) << j, 0.0);
    }

    std::vector<double>& level(int j) { return detail.at(std::size_t(j - coarse_level)); }
    const std::vector<double>& level(int j) const {
        return detail.at(std::size_t(j - coarse_level));
    }

    std::size_t coefficient_count() const { return std::size_t(1) << max_level; }

    // Canonical flat index: coarse k -> k, detail (j,k) -> 2^j + k. This is a
    // bijection onto [0, 2^J_max) and is stable across trees of different
    // depth, which keeps noise draws for shared coefficients aligned.
    static std::uint64_t flat_index(bool is_detail, int j, std::size_t k) {
        return is_detail ? (std::uint64_t(1) << j) + k : std::uint64_t(k);
    }

    bool same_shape(const CoefficientTree& o) const {
        return coarse_level == o.coarse_level && max_level == o.max_level;
    }

    double energy() const {
        double s = 0.0;
        for (double v : coarse) s += v * v;
        for (const auto& lvl : detail)
            for (double v : lvl) s += v * v;
        return s;
    }

    bool all_finite() const {
        for (double v : coarse)
            if (!std::isfinite(v)) return false;
        for (const auto& lvl : detail)
            for (double v : lvl)
                if (!std::isfinite(v)) return false;
        return true;
    }
};

inline CoefficientTree zeros_like(const CoefficientTree& t) {
    return CoefficientTree(t.coarse_level, t.max_level);
}

// a - b, entrywise; shapes must match.
inline CoefficientTree tree_difference(const CoefficientTree& a, const CoefficientTree& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("tree_difference: shape mismatch");
    CoefficientTree out = a;
    for (std::size_t k = 0; k < out.coarse.size(); ++k) out.coarse[k] -= b.coarse[k];
    for (std::size_t l = 0; l < out.detail.size(); ++l)
        for (std::size_t k = 0; k < out.detail[l].size(); ++k) out.detail[l][k] -= b.detail[l][k];
    return out;
}

}  // namespace waveshrink
