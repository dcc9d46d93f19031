#ifndef BEQ_SERIALIZE_HPP
#define BEQ_SERIALIZE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beq/bounds.hpp"
#include "beq/ma_model.hpp"
#include "beq/montecarlo.hpp"
#include "beq/theory.hpp"

namespace beq::io {

// One simulated case: a named coefficient scheme of order m.
struct CaseConfig {
    std::string name;
    ma::CoefficientScheme scheme;
    std::size_t m = 100;

    ma::MovingAverageModel build() const { return ma::build_model(scheme, m); }
};

// Experiment configuration file: cases x p_levels x n_values cells.
struct RunConfig {
    std::vector<CaseConfig> cases;
    std::vector<double> p_levels{0.2, 0.7};
    std::vector<std::int64_t> n_values{100, 500, 1000};
    std::int64_t replications = 100000;
    mc::TGrid t_grid;
    std::uint64_t master_seed = 20240801;
    int threads = 0;

    mc::ExperimentConfig experiment(std::size_t case_ordinal) const;
};

/// The simulation-study settings: case1 a_j = 0.1^j and case2 a_j = j^{-7},
/// m = 100, p in {0.2, 0.7}, n in {100, 500, 1000}.
RunConfig default_config();

nlohmann::json to_json(const ma::CoefficientScheme& scheme);
ma::CoefficientScheme scheme_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CaseConfig& config);
nlohmann::json to_json(const RunConfig& config);
nlohmann::json to_json(const theory::QuantileSpec& spec);
nlohmann::json to_json(const mc::BerryEsseenEstimate& estimate);
nlohmann::json to_json(const mc::RateFit& fit);
nlohmann::json to_json(const bounds::BoundCheckReport& report);

RunConfig config_from_json(const nlohmann::json& j);

/// Loads a config file; a manifest (object with a "config" key) is
/// unwrapped so a previous run's echo reproduces the run.
RunConfig load_config(const std::filesystem::path& path);

/// Fixed-width decimal with 17 significant digits (round-trip exact).
std::string format_double(double x);

void write_table_csv(const std::filesystem::path& path,
                     const std::vector<mc::BerryEsseenEstimate>& estimates);

// rates.csv rows carry their group's fitted line so the file is
// self-contained for plotting.
struct RateRow {
    mc::BerryEsseenEstimate estimate;
    mc::RateFit fit;
};
void write_rates_csv(const std::filesystem::path& path,
                     const std::vector<RateRow>& rows);

void write_simulate_csv(const std::filesystem::path& path,
                        const std::vector<double>& values);

void write_checks_json(const std::filesystem::path& path,
                       const std::vector<bounds::BoundCheckReport>& reports);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace beq::io

#endif
