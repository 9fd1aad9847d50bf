#pragma once
// Exact Gaussian sequence model: every coefficient of the true tree is
// observed plus independent N(0, 1/n) noise. Draws are indexed by the
// coefficient's canonical flat index and a replication stream, so the
// output is a pure function of (tree, n, seed, stream).

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "coeff_tree.hpp"
#include "rng.hpp"

namespace waveshrink {

struct ObservedSequence {
    long long noise_level = 0;  // n
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    CoefficientTree values;  // coarse: y~_{j0,k}; detail: y_{j,k}

    int coarse_level() const { return values.coarse_level; }
    int max_level() const { return values.max_level; }
};

inline ObservedSequence sample_observation(const CoefficientTree& tree, long long n,
                                           std::uint64_t seed, std::uint64_t stream = 0) {
    if (n < 1) throw std::invalid_argument("sample_observation: n must be >= 1");
    ObservedSequence obs;
    obs.noise_level = n;
    obs.seed = seed;
    obs.stream = stream;
    obs.values = tree;
    const double sigma = 1.0 / std::sqrt(double(n));
    for (std::size_t k = 0; k < tree.coarse.size(); ++k) {
        const auto idx = CoefficientTree::flat_index(false, tree.coarse_level, k);
        obs.values.coarse[k] += sigma * gaussian_at(seed, stream, idx);
    }
    for (int j = tree.coarse_level; j < tree.max_level; ++j) {
        const auto& src = tree.level(j);
        auto& dst = obs.values.level(j);
        for (std::size_t k = 0; k < src.size(); ++k) {
            const auto idx = CoefficientTree::flat_index(true, j, k);
            dst[k] = src[k] + sigma * gaussian_at(seed, stream, idx);
        }
    }
    return obs;
}

}  // namespace waveshrink
