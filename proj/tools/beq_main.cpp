// beq: batch runner for the quantile Berry-Esseen simulation study.
//
// Subcommands: table1 (the simulation-study table), rates (log-log decay
// fits over an n grid), checks (inequality verification suite), simulate
// (write one model path).  Exit codes: 0 success / all checks pass,
// 1 check or cell failure, 2 configuration error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "beq/bounds.hpp"
#include "beq/empirical.hpp"
#include "beq/montecarlo.hpp"
#include "beq/normal.hpp"
#include "beq/serialize.hpp"
#include "beq/theory.hpp"
#include "beq/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> replications;
    std::optional<int> threads;
    std::optional<double> grid_step;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_grid = true) {
    cmd->add_option("--config", opts.config_path, "JSON config file (or a manifest echo)");
    cmd->add_option("--out-dir", opts.out_dir, "Output directory");
    cmd->add_option("--seed", opts.seed, "Master seed");
    cmd->add_option("--replications", opts.replications, "Monte Carlo replications");
    cmd->add_option("--threads", opts.threads, "Worker threads (0 = all cores)");
    if (with_grid) cmd->add_option("--grid-step", opts.grid_step, "t-grid step");
}

beq::io::RunConfig effective_config(const CommonOptions& opts) {
    beq::io::RunConfig config = opts.config_path.empty()
                                    ? beq::io::default_config()
                                    : beq::io::load_config(opts.config_path);
    if (opts.seed) config.master_seed = *opts.seed;
    if (opts.replications) config.replications = *opts.replications;
    if (opts.threads) config.threads = *opts.threads;
    if (opts.grid_step) config.t_grid.step = *opts.grid_step;
    return config;
}

std::string iso_utc_now() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string command;
    std::string started = iso_utc_now();
    json config;
    std::vector<std::string> outputs;
    json results;
    std::uint64_t master_seed = 0;

    void write(const fs::path& dir) {
        json j{{"tool", "beq"},
               {"version", beq::kVersion},
               {"command", command},
               {"started", started},
               {"finished", iso_utc_now()},
               {"master_seed", master_seed},
               {"config", config},
               {"outputs", outputs}};
        if (!results.is_null()) j["results"] = results;
        beq::io::write_text_file(dir / "manifest.json", j.dump(2) + "\n");
    }
};

std::string scheme_label(const beq::io::CaseConfig& c) {
    if (const auto* e = std::get_if<beq::ma::ExponentialScheme>(&c.scheme)) {
        char buf[48];
        std::snprintf(buf, sizeof(buf), "a_j = %g^j", e->rho);
        return buf;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "a_j = j^-%g",
                  std::get<beq::ma::PolynomialScheme>(c.scheme).s);
    return buf;
}

struct ExperimentOutput {
    std::vector<beq::mc::BerryEsseenEstimate> estimates;
    std::vector<beq::mc::CellError> errors;
    json quantile_specs = json::array();
};

ExperimentOutput run_all_cases(const beq::io::RunConfig& config) {
    ExperimentOutput out;
    for (std::size_t i = 0; i < config.cases.size(); ++i) {
        const auto experiment = config.experiment(i);
        for (double p : config.p_levels) {
            try {
                const auto spec = beq::theory::make_quantile_spec(experiment.model, p);
                json js = beq::io::to_json(spec);
                js["case"] = config.cases[i].name;
                out.quantile_specs.push_back(std::move(js));
            } catch (const std::exception&) {
                // the cell error below carries the message
            }
        }
        auto result = beq::mc::run_experiment(experiment);
        out.estimates.insert(out.estimates.end(), result.estimates.begin(),
                             result.estimates.end());
        out.errors.insert(out.errors.end(), result.errors.begin(),
                          result.errors.end());
    }
    return out;
}

json results_json(const ExperimentOutput& out) {
    json estimates = json::array();
    for (const auto& e : out.estimates) estimates.push_back(beq::io::to_json(e));
    json errors = json::array();
    for (const auto& e : out.errors)
        errors.push_back(json{{"case", e.label}, {"p", e.p}, {"n", e.n},
                              {"message", e.message}});
    return json{{"estimates", estimates},
                {"quantile_specs", out.quantile_specs},
                {"errors", errors}};
}

void print_table(const beq::io::RunConfig& config,
                 const std::vector<beq::mc::BerryEsseenEstimate>& estimates) {
    std::printf("Uniform Berry-Esseen bounds (R = %lld, grid step %g)\n\n",
                static_cast<long long>(config.replications), config.t_grid.step);
    std::printf("%-22s %-5s", "case", "p");
    for (auto n : config.n_values)
        std::printf(" n=%-9lld", static_cast<long long>(n));
    std::printf("\n");
    for (const auto& c : config.cases) {
        bool first_row = true;
        for (double p : config.p_levels) {
            std::printf("%-22s %-5g",
                        first_row ? (c.name + " (" + scheme_label(c) + ")").c_str()
                                  : "",
                        p);
            for (auto n : config.n_values) {
                bool found = false;
                for (const auto& e : estimates) {
                    if (e.label == c.name && e.p == p && e.n == n) {
                        std::printf(" %-11.6f", e.d_n);
                        found = true;
                        break;
                    }
                }
                if (!found) std::printf(" %-11s", "-");
            }
            std::printf("\n");
            first_row = false;
        }
    }
}

int cmd_table1(const CommonOptions& opts) {
    const auto config = effective_config(opts);
    fs::create_directories(opts.out_dir);

    Manifest manifest;
    manifest.command = "table1";
    manifest.config = beq::io::to_json(config);
    manifest.master_seed = config.master_seed;

    const auto out = run_all_cases(config);
    beq::io::write_table_csv(fs::path(opts.out_dir) / "table1.csv", out.estimates);
    manifest.outputs = {"table1.csv"};
    manifest.results = results_json(out);
    manifest.write(opts.out_dir);

    print_table(config, out.estimates);
    for (const auto& e : out.errors)
        std::fprintf(stderr, "cell error: %s p=%g n=%lld: %s\n", e.label.c_str(),
                     e.p, static_cast<long long>(e.n), e.message.c_str());
    return out.errors.empty() ? 0 : 1;
}

int cmd_rates(const CommonOptions& opts) {
    auto config = effective_config(opts);
    if (opts.config_path.empty()) {
        // rate fits need a wider n grid than the study table
        config.n_values = {100, 200, 400, 800, 1600, 3200};
    }
    if (config.n_values.size() < 4)
        throw std::invalid_argument("rates: need at least 4 n values in the grid");
    fs::create_directories(opts.out_dir);

    Manifest manifest;
    manifest.command = "rates";
    manifest.config = beq::io::to_json(config);
    manifest.master_seed = config.master_seed;

    const auto out = run_all_cases(config);

    std::vector<beq::io::RateRow> rows;
    json fits = json::array();
    for (const auto& c : config.cases) {
        for (double p : config.p_levels) {
            std::vector<beq::mc::BerryEsseenEstimate> group;
            for (const auto& e : out.estimates)
                if (e.label == c.name && e.p == p) group.push_back(e);
            if (group.empty()) continue;
            const auto fit = beq::mc::fit_rate(group);
            for (const auto& e : group) rows.push_back({e, fit});
            json jf = beq::io::to_json(fit);
            jf["case"] = c.name;
            jf["p"] = p;
            fits.push_back(jf);
            std::printf("%s p=%g: slope %.4f (r^2 %.4f, %zu cells)\n",
                        c.name.c_str(), p, fit.slope, fit.r_squared,
                        fit.cells_used);
        }
    }

    beq::io::write_rates_csv(fs::path(opts.out_dir) / "rates.csv", rows);
    manifest.outputs = {"rates.csv"};
    manifest.results = results_json(out);
    manifest.results["fits"] = fits;
    manifest.write(opts.out_dir);

    for (const auto& e : out.errors)
        std::fprintf(stderr, "cell error: %s p=%g n=%lld: %s\n", e.label.c_str(),
                     e.p, static_cast<long long>(e.n), e.message.c_str());
    return out.errors.empty() ? 0 : 1;
}

int cmd_checks(const CommonOptions& opts, std::vector<std::string> selectors) {
    const auto config = effective_config(opts);
    fs::create_directories(opts.out_dir);
    if (selectors.empty()) selectors = {"all"};

    const std::vector<std::string> known = {
        "mills",        "phi_scaling",      "phi_shift",
        "indicator_cov", "lemma1_rate",     "variance_gap",
        "exponential_tail", "moment_growth"};
    auto is_known = [&](const std::string& s) {
        if (s == "all" || s == "deterministic" || s == "montecarlo") return true;
        for (const auto& k : known)
            if (k == s) return true;
        return false;
    };
    for (const auto& s : selectors) {
        if (!is_known(s)) {
            std::fprintf(stderr,
                         "unknown check '%s'; valid selectors: all, deterministic, "
                         "montecarlo",
                         s.c_str());
            for (const auto& k : known) std::fprintf(stderr, ", %s", k.c_str());
            std::fprintf(stderr, "\n");
            return 2;
        }
    }
    auto selected = [&](const std::string& name, bool is_mc) {
        for (const auto& s : selectors) {
            if (s == "all") return true;
            if (s == "deterministic" &&
                (name == "mills" || name == "phi_scaling" || name == "phi_shift"))
                return true;
            if (s == "montecarlo" && is_mc) return true;
            if (s == name) return true;
        }
        return false;
    };

    Manifest manifest;
    manifest.command = "checks";
    manifest.config = beq::io::to_json(config);
    manifest.master_seed = config.master_seed;

    std::vector<beq::bounds::BoundCheckReport> reports;
    auto tag = [](beq::bounds::BoundCheckReport r, const std::string& context) {
        r.name += "(" + context + ")";
        return r;
    };

    if (selected("mills", false)) reports.push_back(beq::bounds::check_mills());
    if (selected("phi_scaling", false))
        reports.push_back(beq::bounds::check_phi_scaling());
    if (selected("phi_shift", false))
        reports.push_back(beq::bounds::check_phi_shift());

    std::vector<std::pair<std::string, beq::ma::MovingAverageModel>> models;
    for (const auto& c : config.cases) models.emplace_back(c.name, c.build());

    if (selected("indicator_cov", false))
        for (const auto& [name, model] : models)
            reports.push_back(
                tag(beq::bounds::check_indicator_cov_inequality(model), name));
    if (selected("lemma1_rate", false))
        for (const auto& [name, model] : models)
            for (double p : config.p_levels)
                reports.push_back(tag(beq::bounds::check_lemma1_rate(model, p),
                                      name + ",p=" + beq::io::format_double(p)));
    if (selected("variance_gap", false))
        for (const auto& [name, model] : models)
            reports.push_back(tag(
                beq::bounds::check_variance_gap(model, config.p_levels.front(), 0.0),
                name));
    if (selected("exponential_tail", true)) {
        beq::bounds::TailCheckConfig tail;
        tail.master_seed = config.master_seed;
        tail.threads = config.threads;
        if (opts.replications) tail.replications = *opts.replications;
        reports.push_back(tag(
            beq::bounds::check_exponential_tail(models.front().second, tail),
            models.front().first));
    }
    if (selected("moment_growth", true)) {
        beq::bounds::MomentCheckConfig moment;
        moment.master_seed = config.master_seed;
        moment.threads = config.threads;
        if (opts.replications) moment.replications = *opts.replications;
        for (const auto& [name, model] : models)
            reports.push_back(tag(beq::bounds::check_moment_growth(model, moment),
                                  name));
    }

    bool all_pass = true;
    for (const auto& r : reports) {
        std::printf("%-5s %-42s worst_margin=% .3e%s\n", r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.worst_margin,
                    r.fitted_constant
                        ? ("  fitted=" + beq::io::format_double(*r.fitted_constant))
                              .c_str()
                        : "");
        all_pass = all_pass && r.pass;
    }

    beq::io::write_checks_json(fs::path(opts.out_dir) / "checks.json", reports);
    manifest.outputs = {"checks.json"};
    manifest.write(opts.out_dir);
    return all_pass ? 0 : 1;
}

struct SimulateOptions {
    CommonOptions common;
    int case_number = 0;
    std::string scheme;
    double param = 0.1;
    std::size_t m = 100;
    std::int64_t n = 1000;
};

int cmd_simulate(const SimulateOptions& opts) {
    beq::io::CaseConfig cc;
    std::uint64_t seed = opts.common.seed.value_or(20240801);
    std::int64_t n = opts.n;
    if (!opts.common.config_path.empty()) {
        const auto config = beq::io::load_config(opts.common.config_path);
        cc = config.cases.front();
        n = config.n_values.front();
        if (!opts.common.seed) seed = config.master_seed;
    } else if (opts.case_number == 1) {
        cc = {"case1", beq::ma::ExponentialScheme{0.1}, opts.m};
    } else if (opts.case_number == 2) {
        cc = {"case2", beq::ma::PolynomialScheme{7.0}, opts.m};
    } else if (opts.scheme == "exponential") {
        cc = {"custom", beq::ma::ExponentialScheme{opts.param}, opts.m};
    } else if (opts.scheme == "polynomial") {
        cc = {"custom", beq::ma::PolynomialScheme{opts.param}, opts.m};
    } else if (opts.scheme.empty()) {
        cc = {"case1", beq::ma::ExponentialScheme{0.1}, opts.m};
    } else {
        throw std::invalid_argument(
            "simulate: --scheme must be 'exponential' or 'polynomial'");
    }
    if (n < 1) throw std::invalid_argument("simulate: n must be >= 1");

    const auto model = cc.build();
    beq::rng::RandomStream stream(seed, 0, 0);
    const auto path = beq::ma::simulate_path(model, std::size_t(n), stream);

    fs::create_directories(opts.common.out_dir);
    beq::io::write_simulate_csv(fs::path(opts.common.out_dir) / "simulate.csv",
                                path);

    double mean = 0.0;
    for (double x : path) mean += x;
    mean /= double(path.size());
    double var = 0.0, lag1 = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        var += (path[i] - mean) * (path[i] - mean);
        if (i + 1 < path.size()) lag1 += (path[i] - mean) * (path[i + 1] - mean);
    }
    var /= double(path.size());
    lag1 /= double(path.size() - 1);

    std::printf("%s, m=%zu, n=%lld, seed=%llu\n", cc.name.c_str(), model.m,
                static_cast<long long>(n),
                static_cast<unsigned long long>(seed));
    std::printf("sample mean      % .6f   (model 0)\n", mean);
    std::printf("sample variance  % .6f   (model 1)\n", var);
    std::printf("lag-1 autocov    % .6f   (model %.6f)\n", lag1,
                beq::ma::autocov(model, 1));

    beq::io::RunConfig echo;
    echo.cases = {cc};
    echo.n_values = {n};
    echo.master_seed = seed;

    Manifest manifest;
    manifest.command = "simulate";
    manifest.config = beq::io::to_json(echo);
    manifest.master_seed = seed;
    manifest.outputs = {"simulate.csv"};
    manifest.write(opts.common.out_dir);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Berry-Esseen bounds for sample quantiles of associated "
                 "Gaussian moving averages"};
    app.require_subcommand(1);
    app.set_version_flag("--version", beq::kVersion);

    CommonOptions table1_opts, rates_opts, checks_opts;
    SimulateOptions sim_opts;
    std::vector<std::string> selectors;

    auto* table1 = app.add_subcommand("table1", "Estimate the uniform Berry-Esseen distances");
    add_common(table1, table1_opts);
    auto* rates = app.add_subcommand("rates", "Fit empirical convergence rates over an n grid");
    add_common(rates, rates_opts);
    auto* checks = app.add_subcommand("checks", "Verify the paper's inequalities numerically");
    add_common(checks, checks_opts, false);
    checks->add_option("selector", selectors,
                       "all | deterministic | montecarlo | check name");
    auto* simulate = app.add_subcommand("simulate", "Write one simulated model path");
    add_common(simulate, sim_opts.common, false);
    simulate->add_option("--case", sim_opts.case_number, "Paper case (1 or 2)");
    simulate->add_option("--scheme", sim_opts.scheme, "exponential | polynomial");
    simulate->add_option("--param", sim_opts.param, "Scheme parameter (rho or s)");
    simulate->add_option("--m", sim_opts.m, "MA order");
    simulate->add_option("--n", sim_opts.n, "Path length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (table1->parsed()) return cmd_table1(table1_opts);
        if (rates->parsed()) return cmd_rates(rates_opts);
        if (checks->parsed()) return cmd_checks(checks_opts, selectors);
        if (simulate->parsed()) return cmd_simulate(sim_opts);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
