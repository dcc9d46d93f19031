#include "beq/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace beq::io {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw std::invalid_argument(std::string("config: missing or non-numeric field '") +
                                    field + "'");
    return j[field].get<double>();
}

}  // namespace

mc::ExperimentConfig RunConfig::experiment(std::size_t case_ordinal) const {
    if (case_ordinal >= cases.size())
        throw std::out_of_range("RunConfig::experiment: case ordinal out of range");
    mc::ExperimentConfig config;
    config.model = cases[case_ordinal].build();
    config.label = cases[case_ordinal].name;
    config.case_ordinal = case_ordinal;
    config.p_levels = p_levels;
    config.n_values = n_values;
    config.replications = replications;
    config.t_grid = t_grid;
    config.master_seed = master_seed;
    config.threads = threads;
    return config;
}

RunConfig default_config() {
    RunConfig config;
    config.cases = {{"case1", ma::ExponentialScheme{0.1}, 100},
                    {"case2", ma::PolynomialScheme{7.0}, 100}};
    return config;
}

json to_json(const ma::CoefficientScheme& scheme) {
    json j;
    if (const auto* e = std::get_if<ma::ExponentialScheme>(&scheme)) {
        j["scheme"] = "exponential";
        j["param"] = e->rho;
    } else {
        j["scheme"] = "polynomial";
        j["param"] = std::get<ma::PolynomialScheme>(scheme).s;
    }
    return j;
}

ma::CoefficientScheme scheme_from_json(const json& j) {
    if (!j.contains("scheme") || !j["scheme"].is_string())
        throw std::invalid_argument("config: case needs a string field 'scheme'");
    const std::string kind = j["scheme"].get<std::string>();
    const double param = require_number(j, "param");
    if (kind == "exponential") return ma::ExponentialScheme{param};
    if (kind == "polynomial") return ma::PolynomialScheme{param};
    throw std::invalid_argument("config: scheme must be 'exponential' or 'polynomial', got '" +
                                kind + "'");
}

json to_json(const CaseConfig& config) {
    json j = to_json(config.scheme);
    j["name"] = config.name;
    j["m"] = config.m;
    return j;
}

json to_json(const RunConfig& config) {
    json cases = json::array();
    for (const auto& c : config.cases) cases.push_back(to_json(c));
    return json{{"cases", cases},
                {"p_levels", config.p_levels},
                {"n_values", config.n_values},
                {"replications", config.replications},
                {"t_grid",
                 {{"lo", config.t_grid.lo},
                  {"hi", config.t_grid.hi},
                  {"step", config.t_grid.step}}},
                {"master_seed", config.master_seed},
                {"threads", config.threads}};
}

json to_json(const theory::QuantileSpec& spec) {
    return json{{"p", spec.p},
                {"x_p", spec.x_p},
                {"f_xp", spec.f_xp},
                {"sigma2_xp", spec.sigma2_xp},
                {"a_p", spec.a_p}};
}

json to_json(const mc::BerryEsseenEstimate& estimate) {
    return json{{"case", estimate.label},
                {"p", estimate.p},
                {"n", estimate.n},
                {"replications", estimate.replications},
                {"D_n", estimate.d_n},
                {"argmax_t", estimate.argmax_t},
                {"mc_se", estimate.mc_se},
                {"exact_sup", estimate.exact_sup},
                {"cell_index", estimate.cell_index}};
}

json to_json(const mc::RateFit& fit) {
    return json{{"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r_squared", fit.r_squared},
                {"cells_used", fit.cells_used}};
}

json to_json(const bounds::BoundCheckReport& report) {
    json j{{"name", report.name},
           {"grid_size", report.grid_size},
           {"worst_margin", report.worst_margin},
           {"worst_point", report.worst_point},
           {"tolerance", report.tolerance},
           {"pass", report.pass},
           {"notes", report.notes}};
    if (report.fitted_constant)
        j["fitted_constant"] = *report.fitted_constant;
    else
        j["fitted_constant"] = nullptr;
    return j;
}

RunConfig config_from_json(const json& j) {
    RunConfig config;
    if (!j.contains("cases") || !j["cases"].is_array() || j["cases"].empty())
        throw std::invalid_argument("config: needs a nonempty array field 'cases'");
    config.cases.clear();
    for (const auto& jc : j["cases"]) {
        CaseConfig c;
        c.scheme = scheme_from_json(jc);
        c.name = jc.value("name", std::string("case") +
                                      std::to_string(config.cases.size() + 1));
        const double m = jc.contains("m") ? require_number(jc, "m") : 100.0;
        if (!(m >= 1.0))
            throw std::invalid_argument("config: case field 'm' must be >= 1");
        c.m = std::size_t(m);
        config.cases.push_back(std::move(c));
    }
    if (j.contains("p_levels")) config.p_levels = j["p_levels"].get<std::vector<double>>();
    if (j.contains("n_values"))
        config.n_values = j["n_values"].get<std::vector<std::int64_t>>();
    if (j.contains("replications"))
        config.replications = std::int64_t(require_number(j, "replications"));
    if (j.contains("t_grid")) {
        const auto& g = j["t_grid"];
        config.t_grid.lo = require_number(g, "lo");
        config.t_grid.hi = require_number(g, "hi");
        config.t_grid.step = require_number(g, "step");
    }
    if (j.contains("master_seed"))
        config.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("threads")) config.threads = int(require_number(j, "threads"));
    return config;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: " + path.string() + ": " + e.what());
    }
    if (j.contains("config")) j = j["config"];  // manifest echo
    return config_from_json(j);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<mc::BerryEsseenEstimate>& estimates) {
    std::string out = "case,p,n,R,D_n,argmax_t,mc_se\n";
    for (const auto& e : estimates) {
        out += e.label + ',' + format_double(e.p) + ',' + std::to_string(e.n) +
               ',' + std::to_string(e.replications) + ',' + format_double(e.d_n) +
               ',' + format_double(e.argmax_t) + ',' + format_double(e.mc_se) +
               '\n';
    }
    write_text_file(path, out);
}

void write_rates_csv(const std::filesystem::path& path,
                     const std::vector<RateRow>& rows) {
    std::string out =
        "case,p,n,R,D_n,mc_se,log_n,log_D_n,slope,intercept,r_squared\n";
    for (const auto& row : rows) {
        const auto& e = row.estimate;
        out += e.label + ',' + format_double(e.p) + ',' + std::to_string(e.n) +
               ',' + std::to_string(e.replications) + ',' + format_double(e.d_n) +
               ',' + format_double(e.mc_se) + ',' +
               format_double(std::log(double(e.n))) + ',' +
               format_double(std::log(e.d_n)) + ',' +
               format_double(row.fit.slope) + ',' +
               format_double(row.fit.intercept) + ',' +
               format_double(row.fit.r_squared) + '\n';
    }
    write_text_file(path, out);
}

void write_simulate_csv(const std::filesystem::path& path,
                        const std::vector<double>& values) {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += std::to_string(i + 1) + ',' + format_double(values[i]) + '\n';
    write_text_file(path, out);
}

void write_checks_json(const std::filesystem::path& path,
                       const std::vector<bounds::BoundCheckReport>& reports) {
    json j;
    j["reports"] = json::array();
    bool all = true;
    for (const auto& r : reports) {
        j["reports"].push_back(to_json(r));
        all = all && r.pass;
    }
    j["all_pass"] = all;
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

}  // namespace beq::io
