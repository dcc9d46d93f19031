#include "beq/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "beq/empirical.hpp"
#include "beq/fitting.hpp"
#include "beq/normal.hpp"
#include "beq/parallel.hpp"

namespace beq::mc {

std::size_t TGrid::size() const {
    return std::size_t(std::floor((hi - lo) / step + 1e-9)) + 1;
}

void TGrid::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("t_grid: step must be > 0");
    if (step > 0.1 + 1e-12)
        throw std::invalid_argument("t_grid: step must be <= 0.1");
    if (!(hi > lo)) throw std::invalid_argument("t_grid: hi must exceed lo");
}

void ExperimentConfig::validate() const {
    t_grid.validate();
    if (replications < 100)
        throw std::invalid_argument("config: replications must be >= 100");
    if (n_values.empty()) throw std::invalid_argument("config: n_values is empty");
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < 1)
            throw std::invalid_argument("config: n values must be >= 1");
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("config: n_values must be strictly increasing");
    }
    if (p_levels.empty()) throw std::invalid_argument("config: p_levels is empty");
    for (double p : p_levels)
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("config: p levels must lie in (0,1)");
}

std::uint64_t make_cell_index(std::uint64_t case_ordinal, double p,
                              std::int64_t n) {
    const auto p_permille = std::uint64_t(std::llround(p * 1000.0));
    return (case_ordinal << 56) | (p_permille << 40) | std::uint64_t(n);
}

double standardized_statistic(const ma::MovingAverageModel& model,
                              const theory::QuantileSpec& spec, std::int64_t n,
                              rng::RandomStream& stream) {
    std::vector<double> path(static_cast<std::size_t>(n));
    std::vector<double> innovations(static_cast<std::size_t>(n) + model.m - 1);
    ma::simulate_path_into(model, stream, innovations, path);
    const double q = empirical::sample_quantile_in_place(path, spec.p);
    return std::sqrt(double(n)) * (q - spec.x_p) / spec.a_p;
}

BerryEsseenEstimate estimate_distance(const ma::MovingAverageModel& model,
                                      const theory::QuantileSpec& spec,
                                      std::int64_t n, std::int64_t replications,
                                      const TGrid& grid, std::uint64_t master_seed,
                                      std::uint64_t cell_index, int threads) {
    std::vector<double> stats(static_cast<std::size_t>(replications));
    const std::size_t path_len = std::size_t(n);
    const std::size_t innov_len = path_len + model.m - 1;
    const std::size_t quantile_idx =
        empirical::order_statistic_index(path_len, spec.p);
    const double scale = std::sqrt(double(n)) / spec.a_p;

    parallel::for_each_index(0, replications, threads, [&](std::int64_t r) {
        thread_local std::vector<double> path;
        thread_local std::vector<double> innovations;
        path.resize(path_len);
        innovations.resize(innov_len);
        rng::RandomStream stream(master_seed, cell_index, std::uint64_t(r));
        ma::simulate_path_into(model, stream, innovations, path);
        std::nth_element(path.begin(), path.begin() + std::ptrdiff_t(quantile_idx),
                         path.end());
        stats[std::size_t(r)] = scale * (path[quantile_idx] - spec.x_p);
    });

    std::sort(stats.begin(), stats.end());

    BerryEsseenEstimate est;
    est.p = spec.p;
    est.n = n;
    est.replications = replications;
    est.cell_index = cell_index;

    const double R = double(replications);
    const std::size_t points = grid.size();
    for (std::size_t i = 0; i < points; ++i) {
        const double t = grid.point(i);
        const auto count =
            std::upper_bound(stats.begin(), stats.end(), t) - stats.begin();
        const double g = double(count) / R;
        const double dist = std::fabs(g - normal::cdf(t));
        if (dist > est.d_n) {
            est.d_n = dist;
            est.argmax_t = t;
        }
        est.mc_se = std::max(est.mc_se, std::sqrt(g * (1.0 - g) / R));
    }

    // Grid-free supremum over [lo, hi]: |G_hat - Phi| is extremal at the
    // empirical jump points (from both sides) and at the interval ends.
    const auto first_in =
        std::lower_bound(stats.begin(), stats.end(), grid.lo) - stats.begin();
    const auto last_in =
        std::upper_bound(stats.begin(), stats.end(), grid.hi) - stats.begin();
    est.exact_sup = std::max(
        std::fabs(double(first_in) / R - normal::cdf(grid.lo)),
        std::fabs(double(last_in) / R - normal::cdf(grid.hi)));
    for (auto i = first_in; i < last_in; ++i) {
        const double phi = normal::cdf(stats[std::size_t(i)]);
        est.exact_sup = std::max(est.exact_sup,
                                 std::fabs(double(i + 1) / R - phi));
        est.exact_sup =
            std::max(est.exact_sup, std::fabs(double(i) / R - phi));
    }
    return est;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    for (double p : config.p_levels) {
        theory::QuantileSpec spec;
        try {
            spec = theory::make_quantile_spec(config.model, p);
        } catch (const std::exception& e) {
            for (std::int64_t n : config.n_values)
                result.errors.push_back({config.label, p, n, e.what()});
            continue;
        }
        for (std::int64_t n : config.n_values) {
            try {
                auto est = estimate_distance(
                    config.model, spec, n, config.replications, config.t_grid,
                    config.master_seed, make_cell_index(config.case_ordinal, p, n),
                    config.threads);
                est.label = config.label;
                result.estimates.push_back(std::move(est));
            } catch (const std::exception& e) {
                result.errors.push_back({config.label, p, n, e.what()});
            }
        }
    }
    return result;
}

RateFit fit_rate(std::span<const BerryEsseenEstimate> estimates) {
    std::map<std::int64_t, double> by_n;
    for (const auto& est : estimates) by_n[est.n] = est.d_n;
    if (by_n.size() < 3)
        throw std::invalid_argument("fit_rate: need at least 3 distinct n");

    std::vector<double> xs, ys;
    for (const auto& [n, d] : by_n) {
        if (!(d > 0.0))
            throw std::invalid_argument("fit_rate: D_n must be positive");
        xs.push_back(std::log(double(n)));
        ys.push_back(std::log(d));
    }
    const auto line = fitting::fit_line(xs, ys);

    RateFit fit;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.cells_used = by_n.size();
    return fit;
}

}  // namespace beq::mc
