#pragma once
// Index-set geometry for windows: which basis functions live inside a
// window, which touch it, and the coefficient-energy sandwich that bounds
// the window integral of a wavelet expansion.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coeff_tree.hpp"
#include "dyadic.hpp"
#include "neighborhood.hpp"
#include "transform.hpp"
#include "wavelet.hpp"

namespace waveshrink {

struct LevelPosition {
    int level = 0;
    std::int64_t position = 0;

    auto operator<=>(const LevelPosition&) const = default;
};

/// A set of (level, position) pairs.
struct IndexSet {
    std::set<LevelPosition> entries;

    bool contains(int j, std::int64_t k) const { return entries.count({j, k}) > 0; }
    std::size_t size() const { return entries.size(); }
    bool subset_of(const IndexSet& other) const {
        for (const auto& e : entries)
            if (!other.entries.count(e)) return false;
        return true;
    }
};

struct NeighborhoodIndexSets {
    IndexSet inside;    // S1: support contained in the window
    IndexSet touching;  // S2: support intersects the window
    std::map<int, std::vector<std::int64_t>> per_level;  // H_j, from `touching`
};

namespace detail {

// Positions k at `level` whose support (length N, periodic) intersects the
// window. Iterates only over a candidate band around the window, with exact
// dyadic endpoint comparisons. Visits each position at most once.
template <typename Fn>
inline void for_each_touching(int level, int support_len, const Window& w, Fn&& fn) {
    const std::int64_t size = std::int64_t(1) << level;
    const double scale = std::ldexp(1.0, level);
    const auto lo_k = std::int64_t(std::floor(w.a * scale)) - support_len - 1;
    const auto hi_k = std::int64_t(std::ceil(w.b * scale)) + 1;
    if (support_len >= size || hi_k - lo_k + 1 >= size) {
        for (std::int64_t k = 0; k < size; ++k)
            if (DyadicSupport{level, k, support_len}.intersects(w)) fn(k);
        return;
    }
    for (std::int64_t q = lo_k; q <= hi_k; ++q) {
        const std::int64_t k = ((q % size) + size) % size;
        if (DyadicSupport{level, k, support_len}.intersects(w)) fn(k);
    }
}

}  // namespace detail

/// S1/S2 index sets and per-level H_j for mother-wavelet supports over
/// levels [j_lo, j_hi).
inline NeighborhoodIndexSets neighborhood_index_sets(const Window& w, int j_lo, int j_hi,
                                                     const WaveletSpec& spec) {
    if (j_lo < spec.coarse_level)
        throw std::invalid_argument("neighborhood_index_sets: j_lo below coarse level");
    if (j_hi <= j_lo) throw std::invalid_argument("neighborhood_index_sets: empty level range");

    NeighborhoodIndexSets out;
    for (int j = j_lo; j < j_hi; ++j) {
        std::set<std::int64_t> seen;
        detail::for_each_touching(j, spec.support_mother, w, [&](std::int64_t k) {
            if (!seen.insert(k).second) return;
            out.touching.entries.insert({j, k});
            if (DyadicSupport{j, k, spec.support_mother}.contained_in(w))
                out.inside.entries.insert({j, k});
        });
        auto& h = out.per_level[j];
        h.assign(seen.begin(), seen.end());
    }
    return out;
}

inline NeighborhoodIndexSets neighborhood_index_sets(const NeighborhoodSpec& nb, int j_lo,
                                                     int j_hi, const WaveletSpec& spec) {
    return neighborhood_index_sets(nb.window(), j_lo, j_hi, spec);
}

struct NormBounds {
    double lower = 0.0;  // sum over S1 of theta^2
    double upper = 0.0;  // sum over S2 of theta^2
};

/// Coefficient-energy sandwich for the window integral of the tree's detail
/// expansion. With include_coarse, the coarse (father) coefficients join the
/// sandwich using father supports, which bounds the window integral of the
/// full expansion.
inline NormBounds restricted_norm_bounds(const CoefficientTree& tree, const Window& w,
                                         const WaveletSpec& spec, bool include_coarse = false) {
    NormBounds nb;
    for (int j = tree.coarse_level; j < tree.max_level; ++j) {
        const auto& lvl = tree.level(j);
        detail::for_each_touching(j, spec.support_mother, w, [&](std::int64_t k) {
            const double t2 = lvl[std::size_t(k)] * lvl[std::size_t(k)];
            nb.upper += t2;
            if (DyadicSupport{j, k, spec.support_mother}.contained_in(w)) nb.lower += t2;
        });
    }
    if (include_coarse) {
        const int j0 = tree.coarse_level;
        std::set<std::int64_t> seen;
        detail::for_each_touching(j0, spec.support_father, w, [&](std::int64_t k) {
            if (!seen.insert(k).second) return;
            const double t2 = tree.coarse[std::size_t(k)] * tree.coarse[std::size_t(k)];
            nb.upper += t2;
            if (DyadicSupport{j0, k, spec.support_father}.contained_in(w)) nb.lower += t2;
        });
    }
    return nb;
}

inline NormBounds restricted_norm_bounds(const CoefficientTree& tree, const NeighborhoodSpec& nb,
                                         const WaveletSpec& spec, bool include_coarse = false) {
    return restricted_norm_bounds(tree, nb.window(), spec, include_coarse);
}

}  // namespace waveshrink
