#include <benchmark/benchmark.h>

#include <vector>

#include "beq/empirical.hpp"
#include "beq/ma_model.hpp"
#include "beq/montecarlo.hpp"
#include "beq/normal.hpp"
#include "beq/rng.hpp"
#include "beq/theory.hpp"

namespace {

using namespace beq;

void BM_philox_block(benchmark::State& state) {
    rng::Philox4x32::Counter ctr{0, 0, 0, 0};
    const rng::Philox4x32::Key key{0x1234, 0x5678};
    for (auto _ : state) {
        ++ctr[0];
        benchmark::DoNotOptimize(rng::Philox4x32::encrypt(ctr, key));
    }
}
BENCHMARK(BM_philox_block);

void BM_gaussian_draw(benchmark::State& state) {
    rng::RandomStream stream(1, 2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(stream.next_gaussian());
}
BENCHMARK(BM_gaussian_draw);

void BM_normal_quantile(benchmark::State& state) {
    double p = 0.12345;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal::quantile(p));
        p += 1e-9;
    }
}
BENCHMARK(BM_normal_quantile);

void BM_bivariate_cdf(benchmark::State& state) {
    const double rho = state.range(0) / 100.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(normal::bivariate_cdf(-0.8, 0.3, rho));
}
BENCHMARK(BM_bivariate_cdf)->Arg(10)->Arg(50)->Arg(95);

void BM_simulate_path(benchmark::State& state) {
    const auto model = ma::build_model(ma::ExponentialScheme{0.1}, 100);
    const std::size_t n = std::size_t(state.range(0));
    std::vector<double> out(n), innovations(n + model.m - 1);
    rng::RandomStream stream(7, 0, 0);
    for (auto _ : state) {
        ma::simulate_path_into(model, stream, innovations, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(std::int64_t(state.iterations()) *
                            std::int64_t(n));
}
BENCHMARK(BM_simulate_path)->Arg(100)->Arg(1000);

void BM_sample_quantile(benchmark::State& state) {
    rng::RandomStream stream(9, 0, 0);
    std::vector<double> values(std::size_t(state.range(0)));
    for (auto& v : values) v = stream.next_gaussian();
    std::vector<double> scratch(values.size());
    for (auto _ : state) {
        scratch = values;
        benchmark::DoNotOptimize(
            empirical::sample_quantile_in_place(scratch, 0.2));
    }
}
BENCHMARK(BM_sample_quantile)->Arg(1000)->Arg(100000);

void BM_long_run_variance(benchmark::State& state) {
    const auto model = ma::build_model(ma::ExponentialScheme{0.1}, 100);
    for (auto _ : state)
        benchmark::DoNotOptimize(theory::long_run_variance(model, -0.8416));
}
BENCHMARK(BM_long_run_variance);

void BM_estimate_distance(benchmark::State& state) {
    const auto model = ma::build_model(ma::ExponentialScheme{0.1}, 100);
    const auto spec = theory::make_quantile_spec(model, 0.2);
    const mc::TGrid grid;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_distance(
            model, spec, 100, state.range(0), grid, 11, 1, 0));
    }
}
BENCHMARK(BM_estimate_distance)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
