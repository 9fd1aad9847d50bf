#pragma once
// Config-driven experiment runner. A config selects an experiment kind,
// basis, smoothness class, estimator, neighborhood rule, n grid, replication
// count, and master seed; outputs are a CSV table and a JSON report that are
// byte-identical across reruns and thread counts.

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "estimators.hpp"
#include "oracles.hpp"
#include "risk.hpp"
#include "serialize.hpp"

namespace waveshrink {

enum class ExperimentKind { RiskTable, RateStudy, Superefficiency, LemmaSuite };

enum class NeighborhoodRule {
    Fixed,     // c_n = value
    DnConstant,  // c_n = value * n^{-1/(1+2 alpha)}
    DnLogPower,  // d_n = value * (log n)^{1/(1+2 alpha)}
    DnLog,       // d_n = value * log n
    DnLogLog,    // d_n = value * log n * log log n
    Gamma,       // c_n = n^{-gamma}
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::RateStudy;
    std::string basis = "daub4";
    int j0 = 2;
    double alpha = 1.0;
    double m = 10.0;
    double m_prime = 5.0;
    std::string function = "takagi";
    std::string estimator = "blockjs";
    double d = 0.5;          // superefficient: threshold root target 2D
    double b_n_power = 0.5;  // local_constant: B_n = n^power
    double x0 = 0.5;
    NeighborhoodRule nb_rule = NeighborhoodRule::Fixed;
    double nb_value = 0.5;   // c_n, d_n multiplier, or gamma
    std::string kernel;      // empty: plain window risk
    std::vector<long long> n_grid;
    int reps = 200;
    std::uint64_t seed = 1;
    std::string regime;      // superefficiency: case_i|case_ii|case_iii|single_block
    std::string out = "out/experiment";
};

// ---------------------------------------------------------------------------
// Parsing and validation
// ---------------------------------------------------------------------------

inline ExperimentKind experiment_kind_by_name(const std::string& s) {
    if (s == "risk_table") return ExperimentKind::RiskTable;
    if (s == "rate_study") return ExperimentKind::RateStudy;
    if (s == "superefficiency") return ExperimentKind::Superefficiency;
    if (s == "lemma_suite") return ExperimentKind::LemmaSuite;
    throw std::invalid_argument("unknown experiment kind '" + s + "'");
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig c;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    std::string kind = "rate_study";
    get("experiment", kind);
    c.kind = experiment_kind_by_name(kind);
    get("basis", c.basis);
    get("j0", c.j0);
    get("alpha", c.alpha);
    get("M", c.m);
    get("M_prime", c.m_prime);
    get("function", c.function);
    get("estimator", c.estimator);
    get("D", c.d);
    get("B_n_power", c.b_n_power);
    get("x0", c.x0);
    get("kernel", c.kernel);
    get("reps", c.reps);
    get("seed", c.seed);
    get("regime", c.regime);
    get("out", c.out);
    if (j.contains("n_grid")) c.n_grid = j.at("n_grid").get<std::vector<long long>>();
    if (j.contains("neighborhood")) {
        const auto& nb = j.at("neighborhood");
        const std::string rule = nb.value("kind", "fixed");
        if (rule == "fixed") {
            c.nb_rule = NeighborhoodRule::Fixed;
            c.nb_value = nb.value("c_n", 0.5);
        } else if (rule == "d_n") {
            const std::string seq = nb.value("sequence", "constant");
            if (seq == "constant") c.nb_rule = NeighborhoodRule::DnConstant;
            else if (seq == "log_power") c.nb_rule = NeighborhoodRule::DnLogPower;
            else if (seq == "log") c.nb_rule = NeighborhoodRule::DnLog;
            else if (seq == "loglog") c.nb_rule = NeighborhoodRule::DnLogLog;
            else throw std::invalid_argument("unknown d_n sequence '" + seq + "'");
            c.nb_value = nb.value("value", 1.0);
        } else if (rule == "gamma") {
            c.nb_rule = NeighborhoodRule::Gamma;
            c.nb_value = nb.value("gamma", 0.5);
        } else {
            throw std::invalid_argument("unknown neighborhood kind '" + rule + "'");
        }
    }
    return c;
}

inline ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read config " + path);
    nlohmann::json j;
    is >> j;
    return parse_config(j);
}

/// Full validation without execution; returns every violated invariant.
inline std::vector<std::string> validate(const ExperimentConfig& c) {
    std::vector<std::string> diags;
    auto bad = [&](const std::string& field, const std::string& msg) {
        diags.push_back(field + ": " + msg);
    };
    try {
        build_basis(c.basis, std::max(c.j0, 0));
    } catch (const std::exception& e) {
        bad("basis", e.what());
    }
    if (c.j0 < 0) bad("j0", "must be >= 0");
    if (!(c.alpha > 0.0)) bad("alpha", "must be > 0");
    if (!(c.m > 0.0)) bad("M", "must be > 0");
    if (!(c.x0 > 0.0 && c.x0 < 1.0)) bad("x0", "must be in (0,1)");
    if (c.kind != ExperimentKind::LemmaSuite) {
        if (c.n_grid.empty()) bad("n_grid", "must be nonempty");
        for (std::size_t i = 0; i < c.n_grid.size(); ++i) {
            const long long n = c.n_grid[i];
            if (n < 4 || (n & (n - 1)) != 0)
                bad("n_grid[" + std::to_string(i) + "]", "must be a power of two >= 4");
            if (i > 0 && n <= c.n_grid[i - 1])
                bad("n_grid[" + std::to_string(i) + "]", "grid must be strictly increasing");
        }
    }
    if (c.reps < 2) bad("reps", "must be >= 2");
    if (c.nb_rule == NeighborhoodRule::Gamma && !(c.nb_value > 0.0 && c.nb_value <= 1.0))
        bad("neighborhood.gamma", "must be in (0, 1]");
    if (c.nb_rule == NeighborhoodRule::Fixed && !(c.nb_value > 0.0 && c.nb_value <= 0.5))
        bad("neighborhood.c_n", "must be in (0, 1/2]");
    if (c.nb_rule != NeighborhoodRule::Fixed && c.nb_rule != NeighborhoodRule::Gamma &&
        !(c.nb_value > 0.0))
        bad("neighborhood.value", "must be > 0");
    if (c.kind != ExperimentKind::LemmaSuite) {
        try {
            estimator_by_name(c.estimator);
        } catch (const std::exception& e) {
            bad("estimator", e.what());
        }
        if (c.kind != ExperimentKind::Superefficiency) {
            const auto& names = catalog_names();
            if (std::find(names.begin(), names.end(), c.function) == names.end())
                bad("function", "unknown catalog function '" + c.function + "'");
        }
    }
    if (!c.kernel.empty() && c.kernel != "uniform" && c.kernel != "triangular")
        bad("kernel", "must be uniform or triangular");
    if (c.kind == ExperimentKind::Superefficiency) {
        if (c.regime != "case_i" && c.regime != "case_ii" && c.regime != "case_iii" &&
            c.regime != "single_block")
            bad("regime", "must be case_i, case_ii, case_iii, or single_block");
        if (c.regime == "case_i" && c.nb_rule != NeighborhoodRule::DnConstant &&
            c.nb_rule != NeighborhoodRule::Fixed)
            bad("regime", "case_i needs a constant d_n sequence");
        if (c.regime == "case_ii" && c.nb_rule != NeighborhoodRule::DnLogPower)
            bad("regime", "case_ii needs the log_power d_n sequence");
        if (c.regime == "case_iii" && c.nb_rule != NeighborhoodRule::DnLog &&
            c.nb_rule != NeighborhoodRule::DnLogLog)
            bad("regime", "case_iii needs the log or loglog d_n sequence");
        if (c.regime == "case_i" && !(c.b_n_power > 0.0 && c.b_n_power < 1.0))
            bad("B_n_power", "must be in (0,1) so that log B_n < n");
        if (c.regime == "single_block" && !(c.d > 0.0)) bad("D", "must be > 0");
    }
    if (c.n_grid.size() < 3 &&
        (c.kind == ExperimentKind::RateStudy || c.kind == ExperimentKind::Superefficiency))
        bad("n_grid", "rate fits need at least 3 grid points");
    return diags;
}

/// c_n for a given n under the config's neighborhood rule, clamped to (0, 1/2].
inline double neighborhood_half_width(const ExperimentConfig& c, long long n) {
    const double ln_n = std::log(double(n));
    const double pull = std::pow(double(n), -1.0 / (1.0 + 2.0 * c.alpha));
    double cn = 0.0;
    switch (c.nb_rule) {
        case NeighborhoodRule::Fixed: cn = c.nb_value; break;
        case NeighborhoodRule::DnConstant: cn = c.nb_value * pull; break;
        case NeighborhoodRule::DnLogPower:
            cn = c.nb_value * std::pow(ln_n, 1.0 / (1.0 + 2.0 * c.alpha)) * pull;
            break;
        case NeighborhoodRule::DnLog: cn = c.nb_value * ln_n * pull; break;
        case NeighborhoodRule::DnLogLog: cn = c.nb_value * ln_n * std::log(ln_n) * pull; break;
        case NeighborhoodRule::Gamma: cn = std::pow(double(n), -c.nb_value); break;
    }
    return std::fmin(0.5, std::fmax(cn, 1e-12));
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct ExperimentReport {
    std::vector<CsvRow> rows;
    nlohmann::json json;  // full structured report
    bool passed = true;   // lemma_suite outcome; true otherwise
    std::vector<std::string> log;

    std::string csv() const {
        std::ostringstream os;
        os << csv_header() << '\n';
        for (const auto& r : rows) os << r.to_line() << '\n';
        return os.str();
    }
};

namespace detail {

inline int levels_for(long long n, int j0) {
    int j = 0;
    while ((1LL << j) < n) ++j;
    return std::max(j, j0 + 1);
}

inline CsvRow row_from(const RiskReport& r, const ExperimentConfig& c, double c_n,
                       const std::string& label) {
    CsvRow row;
    row.estimator = r.estimator;
    row.n = r.n;
    row.alpha = c.alpha;
    row.m = c.m;
    row.x0 = c.x0;
    row.c_n = c_n;
    row.reps = r.reps;
    row.mean = r.mean;
    row.stderr_ = r.stderr_;
    row.seed = r.seed;
    row.label = label;
    return row;
}

inline CsvRow ratefit_row(const RateFit& fit, const ExperimentConfig& c,
                          const std::string& estimator, const std::string& label) {
    CsvRow row;
    row.estimator = estimator + "/ratefit";
    row.n = 0;
    row.alpha = c.alpha;
    row.m = c.m;
    row.x0 = c.x0;
    row.c_n = 0.0;
    row.reps = int(fit.points.size());
    row.mean = fit.slope;
    row.stderr_ = fit.slope_stderr;
    row.seed = c.seed;
    row.label = label;
    return row;
}

inline nlohmann::json plan_json(const LevelPlan& p, const NeighborhoodSpec& nb,
                                const WaveletSpec& spec, int j_max) {
    std::size_t card_h_star = 0;
    const int hi = std::min(p.J_upper, j_max);
    if (p.J_star < hi)
        card_h_star = neighborhood_index_sets(nb, p.J_star, hi, spec).touching.size();
    return {{"J", p.J},
            {"J_star", p.J_star},
            {"J_upper", p.J_upper},
            {"L", p.block_length},
            {"card_H_star", card_h_star},
            {"blockjs_regime", p.blockjs_regime},
            {"J_prime", p.J_prime ? nlohmann::json(*p.J_prime) : nlohmann::json()}};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Experiment kinds
// ---------------------------------------------------------------------------

inline ExperimentReport run_risk_table(const ExperimentConfig& c, int threads,
                                       bool with_ratefit) {
    ExperimentReport rep;
    const WaveletSpec spec = build_basis(c.basis, c.j0);
    const HolderClass cls(c.alpha, c.m);
    EstimatorSetup setup;
    setup.kind = estimator_by_name(c.estimator);
    setup.alpha = c.alpha;
    setup.d = c.d;
    setup.b_n_power = c.b_n_power;

    std::vector<std::pair<double, double>> points;
    nlohmann::json plans = nlohmann::json::object();
    for (const long long n : c.n_grid) {
        const int j_max = detail::levels_for(n, c.j0);
        const TestFunction f = catalog(c.function, cls, j_max, spec);
        const double c_n = neighborhood_half_width(c, n);
        NeighborhoodSpec nb(c.x0, c_n);
        if (!c.kernel.empty()) nb.kernel = kernel_by_name(c.kernel);

        EstimatorSetup active = setup;
        std::string label = c.function;
        const LevelPlan plan = plan_levels(n, c_n, c.alpha, c.j0);
        if (setup.kind == EstimatorKind::Hybrid && plan.blockjs_regime) {
            active.kind = EstimatorKind::BlockJs;
            label += ",auto_blockjs";
            rep.log.push_back("n=" + std::to_string(n) +
                              ": c_n <= log(n)/n, hybrid switched to blockjs");
        }
        const RiskReport r = (!c.kernel.empty() && c.kernel != "uniform")
                                 ? weighted_risk(active, f, nb, n, c.reps, c.seed, threads)
                                 : neighborhood_risk(active, f, nb, n, c.reps, c.seed, threads);
        rep.rows.push_back(detail::row_from(r, c, c_n, label));
        plans[std::to_string(n)] = detail::plan_json(plan, nb, spec, j_max);
        if (r.mean > 0.0) points.push_back({double(n), r.mean});
    }
    if (with_ratefit && points.size() >= 3) {
        const RateFit fit = rate_fit(points);
        rep.rows.push_back(detail::ratefit_row(fit, c, c.estimator, c.function));
        rep.json["rate_fit"] = {{"slope", fit.slope},
                                {"intercept", fit.intercept},
                                {"r_squared", fit.r_squared},
                                {"slope_stderr", fit.slope_stderr}};
    }
    rep.json["plans"] = plans;
    return rep;
}

inline ExperimentReport run_superefficiency(const ExperimentConfig& c, int threads) {
    ExperimentReport rep;
    const WaveletSpec spec = build_basis(c.basis, c.j0);
    const HolderClass cls(c.alpha, c.m);
    nlohmann::json plans = nlohmann::json::object();

    std::vector<std::pair<double, double>> f0_points, max_points, two_point_points;
    for (const long long n : c.n_grid) {
        const int j_max = detail::levels_for(n, c.j0);
        const double c_n = neighborhood_half_width(c, n);
        NeighborhoodSpec nb(c.x0, c_n);
        const TestFunction f0 = catalog("zero", cls, j_max, spec);
        plans[std::to_string(n)] =
            detail::plan_json(plan_levels(n, c_n, c.alpha, c.j0), nb, spec, j_max);

        EstimatorSetup setup;
        setup.alpha = c.alpha;
        setup.d = c.d;
        setup.b_n_power = c.b_n_power;
        double log_b = 0.0;
        if (c.regime == "case_i") {
            setup.kind = EstimatorKind::LocalConstant;
            log_b = c.b_n_power * std::log(double(n));
        } else if (c.regime == "single_block") {
            setup.kind = EstimatorKind::Superefficient;
            log_b = std::log(double(n));
        } else {
            setup.kind = EstimatorKind::Hybrid;
            const double d_n = c_n * std::pow(double(n), 1.0 / (1.0 + 2.0 * c.alpha));
            log_b = (c.regime == "case_ii") ? std::pow(d_n, 1.0 + 2.0 * c.alpha) : d_n;
            log_b = std::fmin(std::fmax(log_b, 1.01), 0.5 * double(n));
        }

        const RiskReport r0 = neighborhood_risk(setup, f0, nb, n, c.reps, c.seed, threads);
        rep.rows.push_back(detail::row_from(r0, c, c_n, "f0"));
        double worst = r0.mean;

        // Two-point alternative tuned to (n, B_n). The bump half-width must
        // satisfy both the seminorm budget and the interval support; try a
        // few candidates before giving up.
        std::string bump_error;
        for (const double a : {2.0, 2.5, 3.0, 4.0, 6.0}) {
            try {
                const TwoPointPair pair =
                    two_point_pair(f0, c.x0, n, std::exp(log_b), cls, c.m_prime, spec, a);
                const RiskReport r1 =
                    neighborhood_risk(setup, pair.bumped, nb, n, c.reps, c.seed, threads);
                rep.rows.push_back(detail::row_from(r1, c, c_n, "bump"));
                worst = std::fmax(worst, r1.mean);
                const double tp_max = std::fmax(r0.mean, r1.mean);
                if (tp_max > 0.0) two_point_points.push_back({double(n) / log_b, tp_max});
                bump_error.clear();
                break;
            } catch (const std::exception& e) {
                bump_error = e.what();
            }
        }
        if (!bump_error.empty())
            rep.log.push_back("n=" + std::to_string(n) +
                              ": two-point alternative skipped: " + bump_error);
        // Rough members of the class.
        for (const char* name : {"takagi", "alpha_cusp"}) {
            const TestFunction f = catalog(name, cls, j_max, spec);
            const RiskReport r =
                neighborhood_risk(setup, f, nb, n, c.reps, c.seed, threads);
            rep.rows.push_back(detail::row_from(r, c, c_n, name));
            worst = std::fmax(worst, r.mean);
        }
        CsvRow mx = rep.rows.back();
        mx.mean = worst;
        mx.stderr_ = 0.0;
        mx.label = "max";
        rep.rows.push_back(mx);
        if (r0.mean > 0.0) f0_points.push_back({double(n), r0.mean});
        max_points.push_back({double(n), worst});
    }
    if (f0_points.size() >= 3) {
        const RateFit fit = rate_fit(f0_points);
        rep.rows.push_back(detail::ratefit_row(fit, c, c.estimator, "f0"));
        rep.json["rate_fit_f0"] = {{"slope", fit.slope}, {"r_squared", fit.r_squared}};
    }
    if (max_points.size() >= 3) {
        const RateFit fit = rate_fit(max_points);
        rep.rows.push_back(detail::ratefit_row(fit, c, c.estimator, "max"));
        rep.json["rate_fit_max"] = {{"slope", fit.slope}, {"r_squared", fit.r_squared}};
    }
    if (two_point_points.size() >= 3) {
        // Worst of the two-point pair against the n / log B_n scale.
        const RateFit fit = rate_fit(two_point_points);
        rep.rows.push_back(detail::ratefit_row(fit, c, c.estimator, "two_point_vs_n_over_logB"));
        rep.json["rate_fit_two_point"] = {{"slope", fit.slope}, {"r_squared", fit.r_squared}};
    }
    rep.json["plans"] = plans;
    return rep;
}

// Deterministic oracle suite behind the estimator guarantees.
inline ExperimentReport run_lemma_suite(const ExperimentConfig& c, int threads);

inline ExperimentReport run_experiment(const ExperimentConfig& c, int threads = 1) {
    const auto diags = validate(c);
    if (!diags.empty()) {
        std::string msg = "invalid config:";
        for (const auto& d : diags) msg += "\n  " + d;
        throw std::invalid_argument(msg);
    }
    ExperimentReport rep;
    switch (c.kind) {
        case ExperimentKind::RiskTable: rep = run_risk_table(c, threads, false); break;
        case ExperimentKind::RateStudy: rep = run_risk_table(c, threads, true); break;
        case ExperimentKind::Superefficiency: rep = run_superefficiency(c, threads); break;
        case ExperimentKind::LemmaSuite: rep = run_lemma_suite(c, threads); break;
    }
    rep.json["rows"] = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rep.json["rows"].push_back({{"estimator", r.estimator},
                                    {"n", r.n},
                                    {"alpha", r.alpha},
                                    {"M", r.m},
                                    {"x0", r.x0},
                                    {"c_n", r.c_n},
                                    {"reps", r.reps},
                                    {"mean", r.mean},
                                    {"stderr", r.stderr_},
                                    {"seed", r.seed},
                                    {"label", r.label}});
    }
    rep.json["log"] = rep.log;
    rep.json["config"] = {{"experiment", int(c.kind)},   {"basis", c.basis},
                          {"j0", c.j0},                  {"alpha", c.alpha},
                          {"M", c.m},                    {"M_prime", c.m_prime},
                          {"function", c.function},      {"estimator", c.estimator},
                          {"D", c.d},                    {"B_n_power", c.b_n_power},
                          {"x0", c.x0},                  {"nb_rule", int(c.nb_rule)},
                          {"nb_value", c.nb_value},      {"kernel", c.kernel},
                          {"n_grid", c.n_grid},          {"reps", c.reps},
                          {"seed", c.seed},              {"regime", c.regime}};
    return rep;
}

inline ExperimentReport run_lemma_suite(const ExperimentConfig& c, int /*threads*/) {
    ExperimentReport rep;
    std::vector<OracleOutcome> outcomes;
    outcomes.push_back(check_threshold_constant());
    outcomes.push_back(check_energy_sandwich(50, c.seed));
    const int mc_reps = std::max(c.reps, 1000);
    outcomes.push_back(check_block_oracle({5, 10, 25}, mc_reps, c.seed));
    outcomes.push_back(check_bounded_coefficient_oracle({5, 10, 25}, {0.1, 1.0}, mc_reps, c.seed));
    outcomes.push_back(check_truncated_moment_monotone());
    outcomes.push_back(check_cusp_decay());

    rep.json["checks"] = nlohmann::json::array();
    for (const auto& o : outcomes) {
        rep.passed = rep.passed && o.passed;
        CsvRow row;
        row.estimator = "lemma_suite";
        row.alpha = c.alpha;
        row.m = c.m;
        row.x0 = c.x0;
        row.reps = mc_reps;
        row.mean = o.metric;
        row.stderr_ = o.margin;
        row.seed = c.seed;
        row.label = o.name + (o.passed ? ",pass" : ",fail");
        rep.rows.push_back(row);
        rep.log.push_back((o.passed ? "[pass] " : "[fail] ") + o.name + ": " + o.detail);
        rep.json["checks"].push_back({{"name", o.name},
                                      {"passed", o.passed},
                                      {"metric", o.metric},
                                      {"margin", o.margin},
                                      {"detail", o.detail}});
    }
    return rep;
}

/// Runs and writes <out>.csv and <out>.json; returns the report.
inline ExperimentReport run_experiment_to_files(const ExperimentConfig& c, int threads = 1) {
    ExperimentReport rep = run_experiment(c, threads);
    const std::filesystem::path base(c.out);
    if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
    {
        std::ofstream os(c.out + ".csv", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + c.out + ".csv");
        os << rep.csv();
    }
    {
        std::ofstream os(c.out + ".json", std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + c.out + ".json");
        os << rep.json.dump(2) << '\n';
    }
    return rep;
}

}  // namespace waveshrink
