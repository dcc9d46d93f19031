#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "beq/serialize.hpp"

namespace {
using namespace beq;
namespace fs = std::filesystem;

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("default config mirrors the simulation study") {
    const auto config = io::default_config();
    REQUIRE(config.cases.size() == 2);
    CHECK(config.cases[0].name == "case1");
    CHECK(std::holds_alternative<ma::ExponentialScheme>(config.cases[0].scheme));
    CHECK(std::get<ma::ExponentialScheme>(config.cases[0].scheme).rho == 0.1);
    CHECK(config.cases[1].name == "case2");
    CHECK(std::get<ma::PolynomialScheme>(config.cases[1].scheme).s == 7.0);
    CHECK(config.cases[0].m == 100);
    CHECK(config.p_levels == std::vector<double>{0.2, 0.7});
    CHECK(config.n_values == std::vector<std::int64_t>{100, 500, 1000});
    CHECK(config.replications == 100000);
    CHECK(config.t_grid.lo == -4.0);
    CHECK(config.t_grid.hi == 4.0);
    CHECK(config.t_grid.step == 0.01);
}

TEST_CASE("config json round trip") {
    auto config = io::default_config();
    config.replications = 5000;
    config.master_seed = 987654321;
    config.threads = 3;
    config.n_values = {50, 60, 70};

    const auto j = io::to_json(config);
    const auto back = io::config_from_json(j);
    CHECK(back.replications == config.replications);
    CHECK(back.master_seed == config.master_seed);
    CHECK(back.threads == config.threads);
    CHECK(back.n_values == config.n_values);
    CHECK(back.p_levels == config.p_levels);
    CHECK(back.cases.size() == config.cases.size());
    CHECK(back.t_grid.step == config.t_grid.step);
    const auto m0 = back.cases[0].build();
    CHECK(m0.m == 100);
}

TEST_CASE("config errors carry the field name") {
    using nlohmann::json;
    CHECK_THROWS_WITH_AS(io::config_from_json(json::object()),
                         doctest::Contains("cases"), std::invalid_argument);
    json j{{"cases", json::array({json{{"scheme", "exponential"}}})}};
    CHECK_THROWS_WITH_AS(io::config_from_json(j), doctest::Contains("param"),
                         std::invalid_argument);
    json bad_scheme{{"cases", json::array({json{{"scheme", "fourier"},
                                                {"param", 1.0}}})}};
    CHECK_THROWS_WITH_AS(io::config_from_json(bad_scheme),
                         doctest::Contains("scheme"), std::invalid_argument);
}

TEST_CASE("manifest echo unwraps on load") {
    const auto path = temp_file("beq_manifest_test.json");
    auto config = io::default_config();
    config.master_seed = 24680;
    nlohmann::json manifest{{"tool", "beq"},
                            {"command", "table1"},
                            {"config", io::to_json(config)}};
    io::write_text_file(path, manifest.dump(2));
    const auto loaded = io::load_config(path);
    CHECK(loaded.master_seed == 24680);
    fs::remove(path);
}

TEST_CASE("malformed json reports the file") {
    const auto path = temp_file("beq_bad_config.json");
    io::write_text_file(path, "{ not json");
    CHECK_THROWS_AS(io::load_config(path), std::invalid_argument);
    fs::remove(path);
    CHECK_THROWS_AS(io::load_config("/nonexistent/beq.json"),
                    std::invalid_argument);
}

TEST_CASE("format_double survives a round trip") {
    for (double x : {0.1, 1.0 / 3.0, 0.03636, 1e-300, 123456.789}) {
        const auto s = io::format_double(x);
        CHECK(std::stod(s) == x);
    }
}

TEST_CASE("csv writers emit documented headers") {
    const auto dir = fs::temp_directory_path();

    mc::BerryEsseenEstimate est;
    est.label = "case1";
    est.p = 0.2;
    est.n = 100;
    est.replications = 1000;
    est.d_n = 0.036;
    est.argmax_t = -0.25;
    est.mc_se = 0.0016;
    io::write_table_csv(dir / "beq_t.csv", {est});
    const auto table = slurp(dir / "beq_t.csv");
    CHECK(table.find("case,p,n,R,D_n,argmax_t,mc_se\n") == 0);
    CHECK(table.find("case1,0.2") != std::string::npos);

    io::write_rates_csv(dir / "beq_r.csv", {{est, {-0.5, 1.0, 0.99, 4}}});
    const auto rates = slurp(dir / "beq_r.csv");
    CHECK(rates.find("case,p,n,R,D_n,mc_se,log_n,log_D_n,slope,intercept,"
                     "r_squared\n") == 0);

    io::write_simulate_csv(dir / "beq_s.csv", {1.5, -2.5});
    CHECK(slurp(dir / "beq_s.csv") == "index,value\n1,1.5\n2,-2.5\n");

    bounds::BoundCheckReport report;
    report.name = "mills_ratio";
    report.pass = true;
    report.worst_margin = 1e-20;
    io::write_checks_json(dir / "beq_c.json", {report});
    const auto checks = nlohmann::json::parse(slurp(dir / "beq_c.json"));
    CHECK(checks["all_pass"] == true);
    CHECK(checks["reports"][0]["name"] == "mills_ratio");

    for (const char* f : {"beq_t.csv", "beq_r.csv", "beq_s.csv", "beq_c.json"})
        fs::remove(dir / f);
}

TEST_CASE("quantile spec and estimate serialization") {
    theory::QuantileSpec spec;
    spec.p = 0.2;
    spec.x_p = -0.8416;
    spec.f_xp = 0.28;
    spec.sigma2_xp = 0.178;
    spec.a_p = 1.5069;
    const auto j = io::to_json(spec);
    CHECK(j["p"] == 0.2);
    CHECK(j["a_p"] == 1.5069);

    mc::BerryEsseenEstimate est;
    est.label = "case2";
    est.d_n = 0.0426;
    const auto je = io::to_json(est);
    CHECK(je["case"] == "case2");
    CHECK(je["D_n"] == 0.0426);
}
