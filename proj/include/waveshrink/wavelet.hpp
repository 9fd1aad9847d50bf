#pragma once
// Orthonormal compactly supported filter banks on [0,1] (periodized).

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace waveshrink {

/// An orthonormal wavelet family: low-pass taps plus derived high-pass taps
/// and the support/regularity metadata used by the index-set geometry.
struct WaveletSpec {
    std::string name;
    std::vector<double> low_pass;   // h, with sum(h) = sqrt(2)
    std::vector<double> high_pass;  // g[t] = (-1)^t h[T-1-t]
    int support_father = 0;         // N_phi = taps - 1
    int support_mother = 0;         // N_psi = taps - 1
    int regularity = 0;             // vanishing moments of psi
    int coarse_level = 0;           // j0

    int taps() const { return int(low_pass.size()); }
};

namespace detail {

inline std::vector<double> haar_taps() {
    const double r = 1.0 / std::sqrt(2.0);
    return {r, r};
}

// Daubechies extremal-phase filter with two vanishing moments, in closed form.
inline std::vector<double> daub4_taps() {
    const double s3 = std::sqrt(3.0);
    const double d = 4.0 * std::sqrt(2.0);
    return {(1.0 + s3) / d, (3.0 + s3) / d, (3.0 - s3) / d, (1.0 - s3) / d};
}

// Coiflet with 6 taps: psi has 2 vanishing moments, phi has a vanishing
// first moment (needed by the local-constant estimator). Closed form in
// sqrt(7), normalized so the taps sum to sqrt(2).
inline std::vector<double> coif6_taps() {
    const double s7 = std::sqrt(7.0);
    const double d = 16.0 * std::sqrt(2.0);
    return {(1.0 - s7) / d,  (5.0 + s7) / d,   (14.0 + 2.0 * s7) / d,
            (14.0 - 2.0 * s7) / d, (1.0 - s7) / d, (-3.0 + s7) / d};
}

inline std::vector<double> quadrature_mirror(const std::vector<double>& h) {
    const int t = int(h.size());
    std::vector<double> g(t);
    for (int i = 0; i < t; ++i) g[i] = ((i % 2) ? -1.0 : 1.0) * h[t - 1 - i];
    return g;
}

inline void check_orthonormal(const std::vector<double>& h, double tol) {
    const int t = int(h.size());
    double sum = 0.0, sumsq = 0.0;
    for (double x : h) {
        sum += x;
        sumsq += x * x;
    }
    if (std::fabs(sum - std::sqrt(2.0)) > tol)
        throw std::invalid_argument("wavelet taps: sum(h) != sqrt(2)");
    if (std::fabs(sumsq - 1.0) > tol)
        throw std::invalid_argument("wavelet taps: sum(h^2) != 1");
    for (int m = 1; 2 * m < t; ++m) {
        double acc = 0.0;
        for (int i = 0; i + 2 * m < t; ++i) acc += h[i] * h[i + 2 * m];
        if (std::fabs(acc) > tol)
            throw std::invalid_argument("wavelet taps: shift-2 orthogonality fails");
    }
}

}  // namespace detail

/// Builds a WaveletSpec by family name. Supported: "haar", "daub4", "coif6".
inline WaveletSpec build_basis(const std::string& name, int coarse_level) {
    if (coarse_level < 0) throw std::invalid_argument("build_basis: coarse_level must be >= 0");
    WaveletSpec spec;
    spec.name = name;
    spec.coarse_level = coarse_level;
    if (name == "haar") {
        spec.low_pass = detail::haar_taps();
        spec.regularity = 1;
    } else if (name == "daub4") {
        spec.low_pass = detail::daub4_taps();
        spec.regularity = 2;
    } else if (name == "coif6") {
        spec.low_pass = detail::coif6_taps();
        spec.regularity = 2;
    } else {
        throw std::invalid_argument("build_basis: unknown family '" + name + "'");
    }
    detail::check_orthonormal(spec.low_pass, 1e-12);
    spec.high_pass = detail::quadrature_mirror(spec.low_pass);
    spec.support_father = spec.taps() - 1;
    spec.support_mother = spec.taps() - 1;
    return spec;
}

}  // namespace waveshrink
