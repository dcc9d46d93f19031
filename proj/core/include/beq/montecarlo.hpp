#ifndef BEQ_MONTECARLO_HPP
#define BEQ_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "beq/ma_model.hpp"
#include "beq/theory.hpp"

namespace beq::mc {

struct TGrid {
    double lo = -4.0;
    double hi = 4.0;
    double step = 0.01;

    std::size_t size() const;
    double point(std::size_t i) const { return lo + double(i) * step; }
    void validate() const;
};

struct ExperimentConfig {
    ma::MovingAverageModel model;
    std::string label;                 // e.g. "case1"; echoed into results
    std::uint64_t case_ordinal = 0;    // distinguishes random streams per case
    std::vector<double> p_levels;
    std::vector<std::int64_t> n_values;
    std::int64_t replications = 100000;
    TGrid t_grid;
    std::uint64_t master_seed = 20240801;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

// One Table-1 cell: the estimated uniform distance over the t grid, the
// location of the maximum, and the worst-case binomial standard error.
// exact_sup additionally maximizes |G_hat - Phi| over the empirical jump
// points inside [lo, hi] (the grid-free supremum).
struct BerryEsseenEstimate {
    std::string label;
    double p = 0.0;
    std::int64_t n = 0;
    std::int64_t replications = 0;
    double d_n = 0.0;
    double argmax_t = 0.0;
    double mc_se = 0.0;
    double exact_sup = 0.0;
    std::uint64_t cell_index = 0;
};

struct CellError {
    std::string label;
    double p = 0.0;
    std::int64_t n = 0;
    std::string message;
};

struct ExperimentResult {
    std::vector<BerryEsseenEstimate> estimates;
    std::vector<CellError> errors;
};

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t cells_used = 0;
};

/// Stream tag for one cell, stable under re-gridding: a cell is addressed
/// by its case ordinal, the quantile level (at 1/1000 resolution), and n.
std::uint64_t make_cell_index(std::uint64_t case_ordinal, double p,
                              std::int64_t n);

/// One replication of A_n = sqrt(n) * (x_{n,p} - x_p) / a_p.
double standardized_statistic(const ma::MovingAverageModel& model,
                              const theory::QuantileSpec& spec, std::int64_t n,
                              rng::RandomStream& stream);

/// Draws R independent statistics (stream = (seed, cell, replication)) and
/// maximizes |G_hat(t) - Phi(t)| over the grid.  Deterministic for any
/// thread count.
BerryEsseenEstimate estimate_distance(const ma::MovingAverageModel& model,
                                      const theory::QuantileSpec& spec,
                                      std::int64_t n, std::int64_t replications,
                                      const TGrid& grid, std::uint64_t master_seed,
                                      std::uint64_t cell_index, int threads);

/// All (p, n) cells of a config; per-cell failures are collected, not fatal.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Least-squares slope of log D_n against log n over >= 3 distinct n.
RateFit fit_rate(std::span<const BerryEsseenEstimate> estimates);

}  // namespace beq::mc

#endif
