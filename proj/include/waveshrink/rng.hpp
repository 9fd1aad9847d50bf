#pragma once
// Counter-based random number generation: Philox4x32-10 keyed streams with
// a Box-Muller Gaussian layer. Every draw is a pure function of
// (seed, stream, index), so replications can run in any order or in
// parallel and still reproduce bit-for-bit.
//
// Algorithm: Philox4x32-10 (Salmon, Moraes, Dror, Shaw; SC'11), 10 rounds,
// multipliers 0xD2511F53 / 0xCD9E8D57, Weyl constants 0x9E3779B9 / 0xBB67AE85.

#include <array>
#include <cmath>
#include <cstdint>

namespace waveshrink {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

struct Philox4x32 {
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round != 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            ctr = {std::uint32_t(p1 >> 32) ^ ctr[1] ^ key[0],
                   std::uint32_t(p1),
                   std::uint32_t(p0 >> 32) ^ ctr[3] ^ key[1],
                   std::uint32_t(p0)};
        }
        return ctr;
    }
};

// One block of Philox output for (seed, stream, index).
inline std::array<std::uint32_t, 4> philox_at(std::uint64_t seed, std::uint64_t stream,
                                              std::uint64_t index) {
    const std::uint64_t k = splitmix64(seed);
    const std::array<std::uint32_t, 2> key = {std::uint32_t(k), std::uint32_t(k >> 32)};
    const std::array<std::uint32_t, 4> ctr = {
        std::uint32_t(index), std::uint32_t(index >> 32),
        std::uint32_t(stream), std::uint32_t(stream >> 32)};
    return Philox4x32::block(ctr, key);
}

// Uniform in (0,1]: top 53 bits of a 64-bit word, offset so log() is finite.
inline double bits_to_open_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t x = (std::uint64_t(hi) << 32) | lo;
    return double((x >> 11) + 1) * 0x1.0p-53;
}

// Standard normal draw indexed by (seed, stream, index) via Box-Muller.
inline double gaussian_at(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const auto w = philox_at(seed, stream, index);
    const double u1 = bits_to_open_unit(w[0], w[1]);
    const double u2 = bits_to_open_unit(w[2], w[3]);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

// Sequential view over one (seed, stream) Gaussian stream.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    double operator()() { return gaussian_at(seed_, stream_, next_++); }
    double at(std::uint64_t index) const { return gaussian_at(seed_, stream_, index); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t next_ = 0;
};

}  // namespace waveshrink
