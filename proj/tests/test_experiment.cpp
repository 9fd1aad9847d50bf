#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waveshrink/experiment.hpp"
#include "waveshrink/serialize.hpp"

using namespace waveshrink;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.kind = ExperimentKind::RateStudy;
    c.basis = "haar";
    c.j0 = 2;
    c.alpha = 1.0;
    c.m = 10.0;
    c.function = "takagi";
    c.estimator = "blockjs";
    c.x0 = 0.5;
    c.nb_rule = NeighborhoodRule::Fixed;
    c.nb_value = 0.5;
    c.n_grid = {256, 512, 1024};
    c.reps = 8;
    c.seed = 424242;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("config parsing and validation") {
    SECTION("well-formed config has no diagnostics") {
        const auto diags = validate(small_config());
        CHECK(diags.empty());
    }
    SECTION("gamma out of range is named") {
        auto c = small_config();
        c.nb_rule = NeighborhoodRule::Gamma;
        c.nb_value = 1.5;
        const auto diags = validate(c);
        REQUIRE_FALSE(diags.empty());
        bool found = false;
        for (const auto& d : diags) found = found || d.find("gamma") != std::string::npos;
        CHECK(found);
    }
    SECTION("non power-of-two n grid is named") {
        auto c = small_config();
        c.n_grid = {256, 300, 1024};
        const auto diags = validate(c);
        bool found = false;
        for (const auto& d : diags) found = found || d.find("n_grid[1]") != std::string::npos;
        CHECK(found);
    }
    SECTION("single-point grid rejected for rate studies") {
        auto c = small_config();
        c.n_grid = {1024};
        bool found = false;
        for (const auto& d : validate(c)) found = found || d.find("at least 3") != std::string::npos;
        CHECK(found);
    }
    SECTION("reps = 1 rejected") {
        auto c = small_config();
        c.reps = 1;
        CHECK_FALSE(validate(c).empty());
        CHECK_THROWS_AS(run_experiment(c, 1), std::invalid_argument);
    }
    SECTION("json round trip of a config") {
        const nlohmann::json j = {{"experiment", "rate_study"},
                                  {"basis", "daub4"},
                                  {"alpha", 0.5},
                                  {"M", 4.0},
                                  {"function", "alpha_cusp"},
                                  {"estimator", "soft"},
                                  {"neighborhood", {{"kind", "gamma"}, {"gamma", 0.25}}},
                                  {"n_grid", {1024, 2048, 4096}},
                                  {"reps", 16},
                                  {"seed", 9}};
        const auto c = parse_config(j);
        CHECK(c.kind == ExperimentKind::RateStudy);
        CHECK(c.alpha == 0.5);
        CHECK(c.nb_rule == NeighborhoodRule::Gamma);
        CHECK(c.nb_value == 0.25);
        CHECK(validate(c).empty());
    }
    SECTION("unknown estimator and function are named") {
        auto c = small_config();
        c.estimator = "sureshrink";
        c.function = "doppler";
        const auto diags = validate(c);
        CHECK(diags.size() >= 2);
    }
}

TEST_CASE("experiment runs") {
    SECTION("rate study emits one row per n plus a rate-fit row") {
        const auto rep = run_experiment(small_config(), 1);
        REQUIRE(rep.rows.size() == 4);
        CHECK(rep.rows[0].n == 256);
        CHECK(rep.rows[3].estimator == "blockjs/ratefit");
        CHECK(rep.json.contains("rate_fit"));
        // Every row carries enough metadata to re-run in isolation.
        for (const auto& r : rep.rows) {
            CHECK(!r.estimator.empty());
            CHECK(r.seed == 424242);
            CHECK(r.reps > 0);
        }
    }
    SECTION("hybrid auto-switches to blockjs in the small-window regime") {
        auto c = small_config();
        c.kind = ExperimentKind::RiskTable;
        c.estimator = "hybrid";
        c.nb_rule = NeighborhoodRule::Gamma;
        c.nb_value = 1.0;  // c_n = 1/n <= log(n)/n
        c.n_grid = {256};
        const auto rep = run_experiment(c, 1);
        REQUIRE(rep.rows.size() == 1);
        CHECK(rep.rows[0].estimator == "blockjs");
        CHECK(rep.rows[0].label.find("auto_blockjs") != std::string::npos);
        REQUIRE_FALSE(rep.log.empty());
    }
    SECTION("byte-identical outputs across reruns and thread counts") {
        namespace fs = std::filesystem;
        const auto dir = fs::temp_directory_path() / "waveshrink_det_test";
        fs::create_directories(dir);
        auto c = small_config();
        c.out = (dir / "a").string();
        run_experiment_to_files(c, 1);
        c.out = (dir / "b").string();
        run_experiment_to_files(c, 4);
        CHECK(slurp((dir / "a.csv").string()) == slurp((dir / "b.csv").string()));
        CHECK(slurp((dir / "a.json").string()) == slurp((dir / "b.json").string()));
        CHECK(!slurp((dir / "a.csv").string()).empty());
        fs::remove_all(dir);
    }
    SECTION("superefficiency case_i produces f0/bump/max rows and rate fits") {
        ExperimentConfig c;
        c.kind = ExperimentKind::Superefficiency;
        c.regime = "case_i";
        c.basis = "coif6";
        c.j0 = 2;
        c.alpha = 1.0;
        c.m = 5.0;
        c.m_prime = 2.5;
        c.estimator = "local_constant";
        c.b_n_power = 0.5;
        c.nb_rule = NeighborhoodRule::DnConstant;
        c.nb_value = 1.0;
        c.n_grid = {1024, 4096, 16384};
        c.reps = 6;
        c.seed = 77;
        const auto rep = run_experiment(c, 2);
        int f0 = 0, bump = 0, mx = 0, fits = 0;
        for (const auto& r : rep.rows) {
            const bool is_fit = r.estimator.find("/ratefit") != std::string::npos;
            if (is_fit) ++fits;
            if (r.label == "f0" && !is_fit) ++f0;
            if (r.label == "bump") ++bump;
            if (r.label == "max" && !is_fit) ++mx;
        }
        CHECK(f0 == 3);
        CHECK(bump == 3);
        CHECK(mx == 3);
        CHECK(fits >= 1);
        CHECK(rep.json.contains("plans"));
    }
}

TEST_CASE("tree serialization") {
    const auto spec = build_basis("daub4", 2);
    CoefficientTree t(2, 7);
    GaussianStream g(3, 0);
    std::uint64_t i = 0;
    for (auto& v : t.coarse) v = g.at(i++);
    for (int j = 2; j < 7; ++j)
        for (auto& v : t.level(j)) v = g.at(i++) * std::pow(2.0, -0.5 * j);

    SECTION("round trip is bit exact") {
        std::stringstream ss;
        save_tree(ss, t, spec.name);
        const auto back = load_tree(ss);
        CHECK(back.basis == "daub4");
        REQUIRE(back.tree.same_shape(t));
        for (std::size_t k = 0; k < t.coarse.size(); ++k)
            CHECK(back.tree.coarse[k] == t.coarse[k]);
        for (int j = 2; j < 7; ++j)
            for (std::size_t k = 0; k < t.level(j).size(); ++k)
                CHECK(back.tree.level(j)[k] == t.level(j)[k]);
    }
    SECTION("bad header rejected") {
        std::stringstream ss("not-a-tree 1\n");
        CHECK_THROWS_AS(load_tree(ss), std::runtime_error);
    }
    SECTION("function serialization carries class metadata") {
        const HolderClass cls(0.5, 3.0);
        const auto f = catalog("alpha_cusp", cls, 7, spec);
        std::stringstream ss;
        save_function(ss, f);
        const auto back = load_function(ss);
        CHECK(back.name == "alpha_cusp");
        CHECK(back.declared_class.alpha == 0.5);
        CHECK(back.declared_class.bound == 3.0);
        CHECK(back.tree.basis == "daub4");
        REQUIRE(back.tree.tree.same_shape(f.true_tree));
        CHECK(back.tree.tree.level(6)[31] == f.true_tree.level(6)[31]);
    }
    SECTION("truncated payload rejected") {
        std::stringstream ss("waveshrink-tree 1\nhaar 1 3\n0.5 0.5\n1 2\n");
        CHECK_THROWS_AS(load_tree(ss), std::runtime_error);
    }
}

TEST_CASE("csv schema") {
    CsvRow row;
    row.estimator = "blockjs";
    row.n = 1024;
    row.alpha = 1.0;
    row.m = 10.0;
    row.x0 = 0.5;
    row.c_n = 0.5;
    row.reps = 100;
    row.mean = 0.015625;
    row.stderr_ = 0.0001220703125;
    row.seed = 42;
    row.label = "takagi";
    CHECK(row.to_line() == "blockjs,1024,1,10,0.5,0.5,100,0.015625,0.0001220703125,42,takagi");
    CHECK(std::string(csv_header()) ==
          "estimator,n,alpha,M,x0,c_n,reps,mean,stderr,seed,label");
}
