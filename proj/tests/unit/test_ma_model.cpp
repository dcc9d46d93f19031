#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "beq/ma_model.hpp"
#include "beq/normal.hpp"
#include "beq/rng.hpp"

namespace {
using namespace beq::ma;
using beq::rng::RandomStream;

// Closed-form autocovariance of the exponential scheme:
// gamma(k) = rho^k (1 - rho^{2(m-k)}) / (1 - rho^{2m}).
double exp_autocov_oracle(double rho, std::size_t m, std::size_t k) {
    if (k >= m) return 0.0;
    const double r2 = rho * rho;
    return std::pow(rho, double(k)) * (1.0 - std::pow(r2, double(m - k))) /
           (1.0 - std::pow(r2, double(m)));
}

}  // namespace

TEST_CASE("build_model normalizes to unit variance") {
    const auto single = build_model(ExponentialScheme{0.1}, 1);
    CHECK(single.weights.size() == 1);
    CHECK(single.weights[0] == doctest::Approx(0.1));
    CHECK(single.innovation_variance == doctest::Approx(100.0));

    const auto case1 = build_model(ExponentialScheme{0.1}, 100);
    // geometric-sum oracle: sum_{j=1..100} 0.01^j
    const double geo = 0.01 * (1.0 - std::pow(0.01, 100.0)) / 0.99;
    CHECK(std::fabs(case1.innovation_variance - 1.0 / geo) < 1e-9);

    const auto poly = build_model(PolynomialScheme{7.0}, 2);
    CHECK(poly.weights[0] == 1.0);
    CHECK(poly.weights[1] == doctest::Approx(std::pow(2.0, -7.0)));
    CHECK(poly.innovation_variance ==
          doctest::Approx(1.0 / (1.0 + std::pow(2.0, -14.0))));

    for (const auto& model : {single, case1, poly}) {
        double ssq = 0.0;
        for (double w : model.weights) ssq += w * w;
        CHECK(std::fabs(model.innovation_variance * ssq - 1.0) <= 1e-12);
        CHECK(std::fabs(autocov(model, 0) - 1.0) <= 1e-12);
        for (double w : model.weights) CHECK(w > 0.0);
    }
}

TEST_CASE("build_model rejects bad parameters") {
    CHECK_THROWS_AS(build_model(ExponentialScheme{0.1}, 0), std::domain_error);
    CHECK_THROWS_AS(build_model(ExponentialScheme{0.0}, 10), std::domain_error);
    CHECK_THROWS_AS(build_model(ExponentialScheme{1.0}, 10), std::domain_error);
    CHECK_THROWS_AS(build_model(PolynomialScheme{0.0}, 10), std::domain_error);
    CHECK_THROWS_AS(build_model(PolynomialScheme{-2.0}, 10), std::domain_error);
}

TEST_CASE("autocov: closed form, support, monotonicity") {
    const auto case1 = build_model(ExponentialScheme{0.1}, 100);
    for (std::size_t k = 0; k < 100; ++k)
        CHECK(std::fabs(autocov(case1, k) - exp_autocov_oracle(0.1, 100, k)) <=
              1e-12);
    CHECK(std::fabs(autocov(case1, 1) - 0.1) < 1e-12);
    CHECK(autocov(case1, 100) == 0.0);
    CHECK(autocov(case1, 5000) == 0.0);

    for (const auto& model :
         {case1, build_model(PolynomialScheme{7.0}, 100)}) {
        double prev = autocov(model, 0);
        for (std::size_t k = 1; k <= model.m; ++k) {
            const double g = autocov(model, k);
            CHECK(g >= 0.0);
            CHECK(g <= prev + 1e-15);
            prev = g;
        }
    }
}

TEST_CASE("simulate_path replays deterministically") {
    const auto model = build_model(ExponentialScheme{0.1}, 100);
    RandomStream s1(11, 3, 9), s2(11, 3, 9);
    const auto a = simulate_path(model, 500, s1);
    const auto b = simulate_path(model, 500, s2);
    CHECK(a == b);
    CHECK(a.size() == 500);
}

TEST_CASE("m=1 path is iid standard normal") {
    const auto model = build_model(ExponentialScheme{0.5}, 1);
    RandomStream stream(17, 0, 0);
    const auto path = simulate_path(model, 100000, stream);
    double mean = 0.0, var = 0.0;
    for (double x : path) mean += x;
    mean /= double(path.size());
    for (double x : path) var += (x - mean) * (x - mean);
    var /= double(path.size());
    CHECK(std::fabs(mean) < 4.0 / std::sqrt(double(path.size())));
    CHECK(std::fabs(var - 1.0) < 4.0 * std::sqrt(2.0 / double(path.size())));
}

TEST_CASE("path moments match the model over 1e6 draws") {
    const auto model = build_model(ExponentialScheme{0.1}, 100);
    RandomStream stream(20240801, 1, 0);
    const std::size_t n = 1000000;
    const auto path = simulate_path(model, n, stream);

    double mean = 0.0;
    for (double x : path) mean += x;
    mean /= double(n);
    CHECK(std::fabs(mean) < 4e-3);

    double lag0 = 0.0, lag1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        lag0 += (path[i] - mean) * (path[i] - mean);
        if (i + 1 < n) lag1 += (path[i] - mean) * (path[i + 1] - mean);
    }
    lag0 /= double(n);
    lag1 /= double(n - 1);
    CHECK(std::fabs(lag0 - 1.0) < 4.0 * std::sqrt(2.0 / double(n)));
    CHECK(std::fabs(lag1 - autocov(model, 1)) < 4.0 / std::sqrt(double(n)));
}

TEST_CASE("marginal passes a strict KS test") {
    const auto model = build_model(ExponentialScheme{0.1}, 100);
    RandomStream stream(3, 0, 0);
    auto path = simulate_path(model, 100000, stream);
    std::sort(path.begin(), path.end());
    const double n = double(path.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        const double F = beq::normal::cdf(path[i]);
        ks = std::max(ks, std::fabs(double(i + 1) / n - F));
        ks = std::max(ks, std::fabs(double(i) / n - F));
    }
    // 0.001-level Kolmogorov critical value sqrt(-ln(0.0005)/2)/sqrt(n)
    CHECK(ks < 1.9494746035204052 / std::sqrt(n));
}

TEST_CASE("indicator covariances at short lags are nonnegative (association)") {
    const auto model = build_model(ExponentialScheme{0.1}, 100);
    RandomStream stream(8, 0, 0);
    const std::size_t n = 200000;
    const auto path = simulate_path(model, n, stream);
    const double c = -0.8416212335729143;  // x_{0.2}

    std::vector<double> ind(n);
    for (std::size_t i = 0; i < n; ++i) ind[i] = path[i] > c ? 1.0 : 0.0;
    double mean = 0.0;
    for (double v : ind) mean += v;
    mean /= double(n);

    for (std::size_t lag = 1; lag <= 5; ++lag) {
        double cov = 0.0, var_prod = 0.0;
        const std::size_t pairs = n - lag;
        for (std::size_t i = 0; i < pairs; ++i) {
            const double prod = (ind[i] - mean) * (ind[i + lag] - mean);
            cov += prod;
            var_prod += prod * prod;
        }
        cov /= double(pairs);
        var_prod = var_prod / double(pairs) - cov * cov;
        const double se = std::sqrt(var_prod / double(pairs));
        CHECK(cov >= -4.0 * se);
    }
}

TEST_CASE("fit_decay: exponential envelope dominates with rate ln(10)") {
    const auto model = build_model(ExponentialScheme{0.1}, 100);
    const auto fit = fit_decay(model, DecayKind::exponential);
    CHECK(fit.kind == DecayKind::exponential);
    CHECK(std::fabs(fit.rate - std::log(10.0)) < 1e-3);
    CHECK(fit.amplitude > 0.9);
    CHECK(fit.amplitude < 1.1);
    CHECK(fit.max_violation <= 1e-15);
    CHECK(fit.lags_used == 99);

    // oracle: direct search confirms dominance at every lag
    for (std::size_t k = 1; k < model.m; ++k)
        CHECK(autocov(model, k) <=
              fit.amplitude * std::exp(-fit.rate * double(k)) + 1e-15);
}

TEST_CASE("fit_decay: polynomial tail satisfies beta > 6") {
    const auto model = build_model(PolynomialScheme{7.0}, 100);
    const auto fit = fit_decay(model, DecayKind::polynomial);
    CHECK(fit.kind == DecayKind::polynomial);
    CHECK(fit.rate > 6.0);
    CHECK(fit.max_violation <= 1e-15);
    for (std::size_t k = 1; k < model.m; ++k)
        CHECK(autocov(model, k) <=
              fit.amplitude * std::pow(double(k), -fit.rate) + 1e-15);
}

TEST_CASE("fit_decay: degenerate m=1 model gives the trivial bound") {
    const auto model = build_model(ExponentialScheme{0.1}, 1);
    const auto fit = fit_decay(model, DecayKind::exponential);
    CHECK(fit.amplitude == 0.0);
    CHECK(fit.max_violation == 0.0);
    CHECK(fit.lags_used == 0);
}
