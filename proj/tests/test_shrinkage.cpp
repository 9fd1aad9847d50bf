#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "waveshrink/catalog.hpp"
#include "waveshrink/estimators.hpp"
#include "waveshrink/oracles.hpp"
#include "waveshrink/plan.hpp"
#include "waveshrink/sequence.hpp"
#include "waveshrink/shrinkage.hpp"

using namespace waveshrink;

TEST_CASE("threshold constant roots") {
    CHECK(solve_threshold_constant(2.0) == Catch::Approx(4.50524).margin(1e-5));
    CHECK(solve_threshold_constant(0.0) == 1.0);
    // Bisection oracle for lambda - log lambda = 2.
    double lo = 1.0, hi = 10.0;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        ((mid - std::log(mid) - 2.0) < 0.0 ? lo : hi) = mid;
    }
    CHECK(solve_threshold_constant(1.0) == Catch::Approx(0.5 * (lo + hi)).margin(1e-10));
    CHECK(solve_threshold_constant(1.0) == Catch::Approx(3.14619).margin(1e-4));
    CHECK_THROWS_AS(solve_threshold_constant(-0.5), std::invalid_argument);
    // Root identity to full precision.
    const double l = solve_threshold_constant(2.0);
    CHECK(l - std::log(l) - 1.0 == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("soft threshold") {
    CHECK(soft_threshold(3.0, 1.0) == 2.0);
    CHECK(soft_threshold(-0.5, 1.0) == 0.0);
    CHECK(soft_threshold(-3.0, 1.0) == -2.0);
    CHECK_THROWS_AS(soft_threshold(1.0, -0.1), std::invalid_argument);
}

TEST_CASE("james stein block") {
    SECTION("below threshold clamps to zero") {
        std::vector<double> ys = {0.5, -0.5, 0.2};
        const auto out = james_stein_block(ys, 4.5, 3.0, 1.0);
        for (double v : out) CHECK(v == 0.0);
    }
    SECTION("direct evaluation") {
        std::vector<double> ys = {2.0};
        const auto out = james_stein_block(ys, 2.0, 1.0, 1.0);
        REQUIRE(out.size() == 1);
        CHECK(out[0] == Catch::Approx(1.0).margin(1e-15));  // factor (1 - 2/4) = 1/2
    }
    SECTION("shrink factor in [0,1): outputs never exceed inputs") {
        GaussianStream g(8, 0);
        for (int t = 0; t < 50; ++t) {
            std::vector<double> ys(25);
            for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = 3.0 * g.at(t * 100 + i);
            const auto out = james_stein_block(ys, 4.5, 10.0, 0.5);
            for (std::size_t i = 0; i < ys.size(); ++i)
                CHECK(std::fabs(out[i]) <= std::fabs(ys[i]));
        }
    }
    SECTION("scale equivariance") {
        std::vector<double> ys = {3.0, -1.0, 0.5, 7.0};
        const double t = 2.5;
        std::vector<double> scaled = ys;
        for (double& v : scaled) v *= t;
        const auto a = james_stein_block(ys, 4.5, 4.0, 1.0);
        const auto b = james_stein_block(scaled, 4.5, 4.0, t * t);
        for (std::size_t i = 0; i < ys.size(); ++i)
            CHECK(b[i] == Catch::Approx(t * a[i]).margin(1e-12));
    }
    SECTION("validation") {
        std::vector<double> empty;
        CHECK_THROWS_AS(james_stein_block(empty, 4.5, 1.0, 1.0), std::invalid_argument);
        std::vector<double> ys = {1.0};
        CHECK_THROWS_AS(james_stein_block(ys, 0.5, 1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("block risk oracle inequality, reduced replication") {
    const auto sum_bound = check_block_oracle({5, 10}, 20000, 99);
    INFO(sum_bound.detail);
    CHECK(sum_bound.passed);
    const auto per_coef = check_bounded_coefficient_oracle({5, 10}, {0.1, 1.0}, 20000, 99);
    INFO(per_coef.detail);
    CHECK(per_coef.passed);
}

TEST_CASE("level plans") {
    SECTION("whole-interval window") {
        const auto p = plan_levels(1024, 0.5, std::nullopt, 0);
        CHECK(p.J == 10);
        CHECK(p.J_star == 1);
        CHECK_FALSE(p.blockjs_regime);
    }
    SECTION("J_star clamps up to j0") {
        const auto p = plan_levels(1024, 0.5, std::nullopt, 3);
        CHECK(p.J_star == 3);
    }
    SECTION("c_n = 1/32: J_star = 5, J_upper from 32 log(1024)") {
        const auto p = plan_levels(1024, 1.0 / 32.0, std::nullopt, 2);
        CHECK(p.J_star == 5);
        CHECK(p.J_upper == 8);  // 32 * ln 1024 = 221.8, smallest 2^j >= that
        CHECK(p.block_length == 7);  // ceil(ln 1024) = ceil(6.93)
        CHECK(p.J_upper <= p.J);
    }
    SECTION("blockjs regime flag") {
        const long long n = 1 << 14;
        const double ln_n = std::log(double(n));
        CHECK(plan_levels(n, 0.9 * ln_n / double(n), std::nullopt, 2).blockjs_regime);
        CHECK_FALSE(plan_levels(n, 2.0 * ln_n / double(n), std::nullopt, 2).blockjs_regime);
    }
    SECTION("J_prime at exact dyadic ties stays strict") {
        const auto p = plan_levels(1 << 12, 0.5, 1.0, 2);
        REQUIRE(p.J_prime.has_value());
        CHECK(*p.J_prime == 3);  // largest 2^j < 4096^{1/3} = 16 exactly
        const auto q = plan_levels(1 << 10, 0.5, 1.0, 2);
        CHECK(*q.J_prime == 3);  // 2^3 = 8 < 1024^{1/3} = 10.08
    }
    SECTION("errors") {
        CHECK_THROWS_AS(plan_levels(1, 0.5, std::nullopt, 2), std::invalid_argument);
        CHECK_THROWS_AS(plan_levels(100, 0.0, std::nullopt, 2), std::invalid_argument);
    }
}

TEST_CASE("horizontal blocks partition a level") {
    const auto blocks = horizontal_blocks(20, 7);
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0].start == 0);
    CHECK(blocks[0].length == 7);
    CHECK(blocks[2].start == 14);
    CHECK(blocks[2].length == 6);  // remainder block
    const auto single = horizontal_blocks(4, 7);
    REQUIRE(single.size() == 1);
    CHECK(single[0].length == 4);
}

TEST_CASE("blockjs estimator") {
    const auto spec = build_basis("haar", 2);
    const long long n = 1024;
    const auto consts = ThresholdConstants::for_noise_level(n);

    SECTION("zero observation maps to zero") {
        CoefficientTree zt(2, 10);
        ObservedSequence obs{n, 0, 0, zt};
        const auto out = block_js(obs, consts);
        CHECK(out.energy() == 0.0);
    }
    SECTION("block below threshold zeroed, block far above kept scaled") {
        CoefficientTree t(2, 10);
        ObservedSequence obs{n, 0, 0, t};
        // Level 8 has 256 entries, L = 7. Fill the first block with small
        // values and the second with large ones.
        auto& lvl = obs.values.level(8);
        for (int i = 0; i < 7; ++i) lvl[std::size_t(i)] = 1e-4;
        double s_sq = 0.0;
        for (int i = 7; i < 14; ++i) {
            lvl[std::size_t(i)] = 0.8;
            s_sq += 0.64;
        }
        const auto out = block_js(obs, consts);
        for (int i = 0; i < 7; ++i) CHECK(out.level(8)[std::size_t(i)] == 0.0);
        const double factor = 1.0 - consts.lambda_star * 7.0 / double(n) / s_sq;
        for (int i = 7; i < 14; ++i)
            CHECK(out.level(8)[std::size_t(i)] == Catch::Approx(0.8 * factor).margin(1e-12));
    }
    SECTION("coarse passes through, levels above J zeroed") {
        CoefficientTree t(2, 12);  // deeper than J = 10
        ObservedSequence obs{n, 0, 0, t};
        obs.values.coarse[1] = 3.14;
        obs.values.level(11)[100] = 5.0;
        const auto out = block_js(obs, consts);
        CHECK(out.coarse[1] == 3.14);
        CHECK(out.level(11)[100] == 0.0);
    }
    SECTION("shallow observation truncates and records it") {
        CoefficientTree t(2, 8);  // shallower than J = 10
        ObservedSequence obs{n, 0, 0, t};
        BlockJsInfo info;
        (void)block_js(obs, consts, &info);
        CHECK(info.truncated);
    }
}

TEST_CASE("hybrid estimator") {
    const auto spec = build_basis("haar", 2);
    const long long n = 1024;
    const auto consts = ThresholdConstants::for_noise_level(n);
    const NeighborhoodSpec nb(0.5, 1.0 / 32.0);
    const HolderClass cls(1.0, 10.0);
    const auto f = catalog("takagi", cls, 10, spec);

    SECTION("branch map equals brute-force classification") {
        const auto plan = plan_levels(n, nb.c_n, std::nullopt, 2);
        const auto branches = hybrid_branch_map(plan, nb, spec, 10);
        const Window w = nb.window();
        for (int j = 2; j < 10; ++j) {
            for (std::int64_t k = 0; k < (std::int64_t(1) << j); ++k) {
                HybridBranch expect;
                if (j >= plan.J) {
                    expect = HybridBranch::Zero;
                } else if (j >= plan.J_upper) {
                    expect = HybridBranch::Horizontal;
                } else if (j >= plan.J_star &&
                           support_interval(j, k, spec, BasisKind::Mother).intersects(w)) {
                    expect = HybridBranch::Vertical;
                } else {
                    expect = HybridBranch::Soft;
                }
                REQUIRE(branches.at(j)[std::size_t(k)] == expect);
            }
        }
    }
    SECTION("vertical block zeroed when its energy is below threshold") {
        CoefficientTree zt(2, 10);
        ObservedSequence obs{n, 0, 0, zt};
        const auto plan = plan_levels(n, nb.c_n, std::nullopt, 2);
        // Tiny values on H^* only.
        const auto sets = neighborhood_index_sets(nb, plan.J_star, plan.J_upper, spec);
        for (const auto& e : sets.touching.entries)
            obs.values.level(e.level)[std::size_t(e.position)] = 1e-5;
        const auto out = hybrid_estimate(obs, nb, consts, spec);
        for (const auto& e : sets.touching.entries)
            CHECK(out.level(e.level)[std::size_t(e.position)] == 0.0);
    }
    SECTION("level at or above J zeroed regardless of magnitude") {
        CoefficientTree t(2, 11);
        ObservedSequence obs{n, 0, 0, t};
        obs.values.level(10)[5] = 100.0;
        const auto out = hybrid_estimate(obs, nb, consts, spec);
        CHECK(out.level(10)[5] == 0.0);
    }
    SECTION("soft branch uses the universal level") {
        CoefficientTree zt(2, 10);
        ObservedSequence obs{n, 0, 0, zt};
        obs.values.level(3)[0] = 0.5;  // level 3 < J_star, away from window
        const auto out = hybrid_estimate(obs, nb, consts, spec);
        CHECK(out.level(3)[0] == Catch::Approx(soft_threshold(0.5, consts.soft_level)));
    }
    SECTION("precondition: blockjs regime rejected") {
        CoefficientTree zt(2, 10);
        const long long big_n = 1 << 10;
        ObservedSequence obs{big_n, 0, 0, zt};
        const NeighborhoodSpec tiny(0.5, 0.5 * std::log(double(big_n)) / double(big_n));
        CHECK_THROWS_AS(hybrid_estimate(obs, tiny, consts, spec), std::invalid_argument);
    }
    SECTION("agrees with blockjs on shared horizontal blocks") {
        const auto plan = plan_levels(n, nb.c_n, std::nullopt, 2);
        for (int r = 0; r < 20; ++r) {
            const auto obs = sample_observation(f.true_tree, n, 31337, std::uint64_t(r));
            const auto hb = hybrid_estimate(obs, nb, consts, spec);
            const auto bj = block_js(obs, consts);
            for (int j = plan.J_upper; j < std::min(plan.J, 10); ++j) {
                const auto& a = hb.level(j);
                const auto& b = bj.level(j);
                for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
            }
        }
    }
}

TEST_CASE("superefficient estimator") {
    const long long n = 1024;
    SECTION("zero in, zero out") {
        CoefficientTree zt(2, 10);
        ObservedSequence obs{n, 0, 0, zt};
        const auto out = superefficient_estimate(obs, 0.5, 1.0);
        CHECK(out.energy() == 0.0);
    }
    SECTION("large signal passes nearly unshrunk; block geometry respected") {
        CoefficientTree t(2, 10);
        ObservedSequence obs{n, 0, 0, t};
        obs.values.coarse[0] = 50.0;  // S^2 huge
        obs.values.level(3)[1] = 1.0;
        obs.values.level(9)[7] = 1.0;  // above J' = 3: zeroed
        const auto out = superefficient_estimate(obs, 0.5, 1.0);
        const double lambda = solve_threshold_constant(1.0);
        const double s_sq = 50.0 * 50.0 + 1.0;
        const double factor = 1.0 - lambda * 16.0 / double(n) / s_sq;
        CHECK(out.coarse[0] == Catch::Approx(50.0 * factor).margin(1e-12));
        CHECK(out.level(3)[1] == Catch::Approx(factor).margin(1e-12));
        CHECK(out.level(9)[7] == 0.0);
    }
    SECTION("chi-square false-activation rate at the zero function") {
        // P(keep anything | f = 0) <= P(chi^2_{L'} > lambda L').
        CoefficientTree zt(2, 10);
        const double lambda = solve_threshold_constant(1.0);
        const double tail = chi_square_upper_tail(16.0, lambda * 16.0);
        int active = 0;
        const int reps = 40000;
        for (int r = 0; r < reps; ++r) {
            const auto obs = sample_observation(zt, n, 321, std::uint64_t(r));
            const auto out = superefficient_estimate(obs, 0.5, 1.0);
            if (out.energy() > 0.0) ++active;
        }
        const double rate = double(active) / double(reps);
        const double se = std::sqrt(tail * (1.0 - tail) / double(reps)) + 1e-9;
        CHECK(rate <= tail + 3.0 * se + 1.0 / double(reps));
    }
    SECTION("n too small for the declared alpha") {
        CoefficientTree zt(3, 6);
        ObservedSequence obs{4, 0, 0, zt};
        CHECK_THROWS_AS(superefficient_estimate(obs, 0.5, 3.0), std::invalid_argument);
    }
}

TEST_CASE("local constant estimator") {
    const auto spec = build_basis("coif6", 2);
    const NeighborhoodSpec nb(0.5, 0.05);
    const long long n = 4096;
    const double b_n = 64.0;

    SECTION("noiseless zero truth gives zero") {
        CoefficientTree zt(2, 12);
        ObservedSequence obs{n, 0, 0, zt};  // no noise added: raw zero tree
        const auto r = local_constant_estimate(obs, nb, b_n, 1.0, spec);
        CHECK(r.value == 0.0);
    }
    SECTION("below-threshold observation clamps to zero") {
        CoefficientTree probe_tree(2, 12);
        ObservedSequence probe_obs{n, 0, 0, probe_tree};
        const auto probe = local_constant_estimate(probe_obs, nb, b_n, 1.0, spec);
        // Constant truth c has scaling coefficients 2^{-j/2} c at every
        // level, so a noiseless observation yields y~_n = c exactly.
        const double c = 0.5 * probe.threshold;
        CoefficientTree t2(2, 12);
        for (auto& v : t2.coarse) v = std::exp2(-1.0) * c;  // 2^{-j0/2} c at j0 = 2
        ObservedSequence obs2{n, 0, 0, t2};
        const auto r = local_constant_estimate(obs2, nb, b_n, 1.0, spec);
        CHECK(r.value == 0.0);
    }
    SECTION("matches the scalar soft-threshold risk by simulation") {
        // Constant truth c: y~ = c + sigma_n z exactly, so the estimator is
        // the scalar soft-threshold rule.
        const double c = 0.8;
        CoefficientTree t(2, 12);
        auto probe_obs = ObservedSequence{n, 0, 0, t};
        const auto probe = local_constant_estimate(probe_obs, nb, b_n, 1.0, spec);
        for (auto& v : t.coarse) v = std::exp2(-1.0) * c;  // 2^{-j0/2} c at j0 = 2

        const int reps = 4000;
        std::vector<double> direct(reps), scalar(reps);
        GaussianStream g(5150, 0);
        for (int r = 0; r < reps; ++r) {
            const auto obs = sample_observation(t, n, 777, std::uint64_t(r));
            const auto est = local_constant_estimate(obs, nb, b_n, 1.0, spec);
            direct[std::size_t(r)] = (est.value - c) * (est.value - c);
            const double y = c + probe.sigma_n * g.at(std::uint64_t(r));
            const double d = soft_threshold(y, probe.threshold);
            scalar[std::size_t(r)] = (d - c) * (d - c);
        }
        const auto md = mean_stderr(direct);
        const auto ms = mean_stderr(scalar);
        CHECK(std::fabs(md.mean - ms.mean) <= 3.0 * (md.stderr_ + ms.stderr_));
    }
    SECTION("j_n below coarse level is an error") {
        CoefficientTree t(5, 8);
        ObservedSequence obs{16, 0, 0, t};
        CHECK_THROWS_AS(local_constant_estimate(obs, nb, 8.0, 1.0, spec), std::invalid_argument);
    }
}
