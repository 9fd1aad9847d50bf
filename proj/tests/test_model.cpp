#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "waveshrink/bump.hpp"
#include "waveshrink/catalog.hpp"
#include "waveshrink/holder.hpp"
#include "waveshrink/oracles.hpp"
#include "waveshrink/rng.hpp"
#include "waveshrink/sequence.hpp"

using namespace waveshrink;

TEST_CASE("philox known-answer vectors") {
    // Reference outputs for Philox4x32-10 (Random123 kat_vectors).
    const auto r1 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(r1 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    const auto r2 = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                      {0xffffffffu, 0xffffffffu});
    CHECK(r2 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    const auto r3 = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                      {0xa4093822u, 0x299f31d0u});
    CHECK(r3 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("gaussian stream statistics") {
    GaussianStream g(2024, 0);
    const int n = 200000;
    double s = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = g.at(std::uint64_t(i));
        s += z;
        ss += z * z;
    }
    const double mean = s / n;
    const double var = ss / n - mean * mean;
    CHECK(std::fabs(mean) < 3.0 / std::sqrt(double(n)));
    CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt(2.0 / double(n)));
}

TEST_CASE("holder class and seminorm") {
    CHECK(HolderClass(0.5, 1.0).k() == 0);
    CHECK(HolderClass(1.0, 1.0).k() == 0);
    CHECK(HolderClass(1.5, 1.0).k() == 1);
    CHECK_THROWS_AS(HolderClass(0.0, 1.0), std::invalid_argument);

    const std::size_t n = 2048;
    SECTION("constant function has zero seminorm") {
        std::vector<double> s(n, 3.7);
        CHECK(holder_seminorm(s, 0.7) == 0.0);
    }
    SECTION("identity has seminorm 1 under alpha < 1") {
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = double(i) / double(n);
        const double v = holder_seminorm(s, 0.6);
        CHECK(v == Catch::Approx(1.0).margin(0.01));
        CHECK(v <= 1.0);
    }
    SECTION("M x^alpha attains M") {
        const double m = 2.5, alpha = 0.5;
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = m * std::pow(double(i) / double(n), alpha);
        CHECK(holder_seminorm(s, alpha) == Catch::Approx(m).margin(1e-9));
    }
    SECTION("too few samples") {
        std::vector<double> s = {1.0, 2.0};
        CHECK_THROWS_AS(holder_seminorm(std::span<const double>(s.data(), 1), 0.5),
                        std::invalid_argument);
    }
}

TEST_CASE("bump construction") {
    SECTION("unit mass, plateau, and budget") {
        const BumpFunction g = make_bump(0.5, 2.0, 2.0);
        CHECK(bump_l2_mass(g) == Catch::Approx(1.0).margin(1e-6));
        for (double x : {-1.0, -0.5, 0.0, 0.3, 1.0}) CHECK(g(x) == g.plateau);
        CHECK(g(2.0) == 0.0);
        CHECK(g(-2.5) == 0.0);
        CHECK(g.grid_seminorm <= 2.0 * (1.0 + 1e-3));
    }
    SECTION("A too small for a tight budget") {
        CHECK_THROWS_AS(make_bump(0.5, 0.05, 1.05), std::invalid_argument);
    }
    SECTION("smoothstep endpoints") {
        CHECK(detail::smoothstep(3, 0.0) == 0.0);
        CHECK(detail::smoothstep(3, 1.0) == 1.0);
        CHECK(detail::smoothstep(3, 0.5) == Catch::Approx(0.5).margin(1e-12));
    }
}

TEST_CASE("two point pair") {
    const auto spec = build_basis("daub4", 2);
    const HolderClass cls(1.0, 5.0);
    const auto f0 = catalog("zero", cls, 10, spec);
    const long long n = 4096;
    const double b_n = 64.0;  // log B_n ~ 4.16
    const auto pair = two_point_pair(f0, 0.5, n, b_n, cls, 2.5, spec);

    SECTION("theta = 0 member is f0 itself") {
        for (std::size_t i = 0; i < pair.base.samples.size(); ++i)
            CHECK(pair.base.samples[i] == f0.samples[i]);
    }
    SECTION("perturbation mass: n int (f1-f0)^2 = log B_n") {
        CHECK(pair.rho_n == Catch::Approx(std::log(b_n)).epsilon(1e-3));
    }
    SECTION("both members pass the class membership oracle") {
        CHECK(pair.base.membership_checked);
        CHECK(pair.bumped.membership_checked);
        CHECK(pair.bumped.seminorm_value <= cls.bound * (1.0 + 1e-3));
    }
    SECTION("support must stay inside the interval") {
        CHECK_THROWS_AS(two_point_pair(f0, 0.01, n, b_n, cls, 2.5, spec), std::invalid_argument);
        CHECK_THROWS_AS(two_point_pair(f0, 0.5, n, 1.0, cls, 2.5, spec), std::invalid_argument);
    }
}

TEST_CASE("catalog members") {
    const auto spec = build_basis("daub4", 2);
    const HolderClass cls(1.0, 10.0);

    SECTION("zero is identically zero") {
        const auto f = catalog("zero", cls, 8, spec);
        CHECK(f.true_tree.energy() == 0.0);
        for (double v : f.samples) CHECK(v == 0.0);
    }
    SECTION("constant has vanishing details") {
        const auto f = catalog("constant", cls, 8, spec);
        for (int j = 2; j < 8; ++j)
            for (double v : f.true_tree.level(j)) CHECK(std::fabs(v) < 1e-12);
    }
    SECTION("unknown name") {
        CHECK_THROWS_AS(catalog("doppler", cls, 8, spec), std::invalid_argument);
    }
    SECTION("all members carry verified membership") {
        for (const auto& name : catalog_names()) {
            const auto f = catalog(name, cls, 8, spec);
            CHECK(f.membership_checked);
            CHECK(f.seminorm_value <= cls.bound * (1.0 + 1e-3));
        }
    }
    SECTION("cusp decay slope tracks -(1/2 + alpha)") {
        for (double alpha : {0.5, 1.0}) {
            const auto s = cusp_decay_slope(alpha, 4, 12);
            CHECK(std::fabs(s.slope - s.target) <= 0.1);
        }
    }
    SECTION("takagi coefficients are dense at every level") {
        const auto f = catalog("takagi", cls, 9, spec);
        for (int j = 4; j < 9; ++j) {
            const auto& lvl = f.true_tree.level(j);
            int nonzero = 0;
            double mx = 0.0;
            for (double v : lvl) {
                mx = std::fmax(mx, std::fabs(v));
                if (std::fabs(v) > 1e-14) ++nonzero;
            }
            CHECK(nonzero > int(lvl.size()) / 2);
            // Envelope decay around 2^{-j(1/2+alpha)}.
            const double envelope = mx * std::pow(2.0, double(j) * 1.5);
            CHECK(envelope > 0.01);
            CHECK(envelope < 100.0);
        }
    }
}

TEST_CASE("sequence model sampling") {
    const auto spec = build_basis("haar", 2);
    const HolderClass cls(1.0, 5.0);
    const auto f = catalog("smooth_bump", cls, 8, spec);

    SECTION("identical seed reproduces identical output") {
        const auto a = sample_observation(f.true_tree, 100, 42, 7);
        const auto b = sample_observation(f.true_tree, 100, 42, 7);
        for (std::size_t k = 0; k < a.values.coarse.size(); ++k)
            CHECK(a.values.coarse[k] == b.values.coarse[k]);
        for (int j = 2; j < 8; ++j)
            for (std::size_t k = 0; k < a.values.level(j).size(); ++k)
                CHECK(a.values.level(j)[k] == b.values.level(j)[k]);
        const auto c = sample_observation(f.true_tree, 100, 43, 7);
        CHECK(c.values.level(7)[0] != a.values.level(7)[0]);
    }
    SECTION("noise variance is 1/n") {
        CoefficientTree zero(0, 14);  // 2^14 coefficients
        const long long n = 100;
        const auto obs = sample_observation(zero, n, 99, 0);
        double ss = 0.0;
        std::size_t count = 0;
        for (int j = 0; j < 14; ++j)
            for (double v : obs.values.level(j)) {
                ss += v * v;
                ++count;
            }
        const double var = ss / double(count);
        const double se = std::sqrt(2.0 / double(count)) / double(n);
        CHECK(std::fabs(var - 0.01) < 3.0 * se);
    }
    SECTION("sqrt(n)-normalized errors have mean near zero") {
        CoefficientTree zero(0, 12);
        const auto obs = sample_observation(zero, 400, 7, 3);
        double s = 0.0;
        std::size_t count = 0;
        for (int j = 0; j < 12; ++j)
            for (double v : obs.values.level(j)) {
                s += v * std::sqrt(400.0);
                ++count;
            }
        CHECK(std::fabs(s / double(count)) < 3.0 / std::sqrt(double(count)));
    }
    SECTION("n below 1 is rejected") {
        CHECK_THROWS_AS(sample_observation(f.true_tree, 0, 1, 0), std::invalid_argument);
    }
}
