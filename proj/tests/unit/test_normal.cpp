#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "beq/normal.hpp"

namespace {

using beq::normal::bivariate_cdf;
using beq::normal::bivariate_excess;
using beq::normal::cdf;
using beq::normal::pdf;
using beq::normal::quantile;

// Adaptive Simpson quadrature of the density: an oracle for cdf that
// never touches erfc.
double simpson(double (*f)(double), double a, double b, int n) {
    double sum = f(a) + f(b);
    const double h = (b - a) / n;
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

double cdf_oracle(double x) {
    // integrate the density from 0 with the known value cdf(0) = 1/2
    return 0.5 + simpson(&beq::normal::pdf, 0.0, x, 4000);
}

// Bisection of cdf: an oracle for quantile.
double quantile_oracle(double p) {
    double lo = -10.0, hi = 10.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

// Iterated quadrature of the bivariate density: an oracle for the 2D CDF
// that is independent of the correlation-integral route.
double bivariate_oracle(double h, double k, double rho) {
    const double s = std::sqrt(1.0 - rho * rho);
    const int n = 4000;
    const double a = -9.0;
    double sum = 0.0;
    const double step = (h - a) / n;
    for (int i = 0; i <= n; ++i) {
        const double x = a + i * step;
        const double inner = 0.5 * std::erfc(-((k - rho * x) / s) * M_SQRT1_2);
        const double v = pdf(x) * inner;
        sum += (i == 0 || i == n) ? v : (i % 2 ? 4.0 * v : 2.0 * v);
    }
    return sum * step / 3.0;
}

}  // namespace

TEST_CASE("pdf matches the closed form") {
    CHECK(std::fabs(pdf(0.0) - 0.3989422804014327) < 1e-16);
    CHECK(pdf(1.0) == pdf(-1.0));
    CHECK(std::fabs(pdf(2.0) - 0.05399096651318806) < 1e-16);
    CHECK(pdf(5.0) > 0.0);
}

TEST_CASE("cdf values and limits") {
    CHECK(cdf(0.0) == 0.5);
    CHECK(cdf(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(cdf(-std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(std::fabs(cdf(1.96) - 0.9750021048517795) < 1e-14);

    for (double x : {0.3, 1.0, 1.96, 2.5, 3.5})
        CHECK(std::fabs(cdf(x) - cdf_oracle(x)) < 1e-14);
}

TEST_CASE("cdf symmetry on a dense grid") {
    for (int i = -500; i <= 500; ++i) {
        const double x = i * 0.02;
        CHECK(std::fabs(cdf(x) + cdf(-x) - 1.0) <= 1e-15);
    }
    // monotone nondecreasing
    double prev = 0.0;
    for (int i = -800; i <= 800; ++i) {
        const double c = cdf(i * 0.01);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("quantile examples and oracle") {
    CHECK(quantile(0.5) == 0.0);
    CHECK(std::fabs(quantile(0.2) - (-0.8416212335729143)) < 1e-14);
    CHECK(std::fabs(quantile(0.7) - 0.5244005127080407) < 1e-14);
    for (double p : {0.01, 0.2, 0.37, 0.5, 0.63, 0.7, 0.95})
        CHECK(std::fabs(quantile(p) - quantile_oracle(p)) < 2e-13);
}

TEST_CASE("quantile round trip and antisymmetry over 999 levels") {
    for (int i = 1; i <= 999; ++i) {
        const double p = i / 1000.0;
        CHECK(std::fabs(cdf(quantile(p)) - p) <= 1e-12);
        CHECK(std::fabs(quantile(1.0 - p) + quantile(p)) <= 1e-12);
    }
}

TEST_CASE("quantile rejects levels outside (0,1)") {
    CHECK_THROWS_AS(quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(quantile(1.0), std::domain_error);
    CHECK_THROWS_AS(quantile(-0.5), std::domain_error);
    CHECK_THROWS_AS(quantile(1.5), std::domain_error);
    CHECK_THROWS_AS(quantile(std::nan("")), std::domain_error);
}

TEST_CASE("bivariate cdf closed forms") {
    CHECK(std::fabs(bivariate_cdf(0.0, 0.0, 0.0) - 0.25) < 1e-15);
    // arcsine law at the origin
    for (int i = -10; i <= 10; ++i) {
        const double rho = i / 10.0;
        const double expected = 0.25 + std::asin(rho) / (2.0 * M_PI);
        CHECK(std::fabs(bivariate_cdf(0.0, 0.0, rho) - expected) < 1e-9);
    }
    CHECK(std::fabs(bivariate_cdf(0.0, 0.0, 0.5) - 1.0 / 3.0) < 1e-10);
    // comonotone and antithetic limits
    CHECK(bivariate_cdf(0.3, -1.2, 1.0) == cdf(-1.2));
    CHECK(bivariate_cdf(-0.4, 0.9, 1.0) == cdf(-0.4));
    CHECK(std::fabs(bivariate_cdf(1.0, -1.0, -1.0) -
                    std::max(0.0, cdf(1.0) + cdf(-1.0) - 1.0)) < 1e-15);
}

TEST_CASE("bivariate cdf against iterated quadrature oracle") {
    const double cases[][3] = {{0.5, -0.3, 0.4},  {-1.0, -1.5, 0.8},
                               {1.2, 0.7, -0.6},  {0.0, 2.0, 0.95},
                               {-0.8416, -0.8416, 0.1}};
    for (const auto& c : cases)
        CHECK(std::fabs(bivariate_cdf(c[0], c[1], c[2]) -
                        bivariate_oracle(c[0], c[1], c[2])) < 1e-8);
}

TEST_CASE("bivariate cdf properties") {
    const double hs[] = {-2.0, -0.5, 0.0, 0.8, 2.5};
    for (double h : hs) {
        for (double k : hs) {
            // independence factorizes
            CHECK(std::fabs(bivariate_cdf(h, k, 0.0) - cdf(h) * cdf(k)) <= 1e-12);
            double prev = -1.0;
            for (int i = -4; i <= 4; ++i) {
                const double rho = i / 4.0;
                const double v = bivariate_cdf(h, k, rho);
                // symmetry in (h, k)
                CHECK(std::fabs(v - bivariate_cdf(k, h, rho)) <= 1e-12);
                // bounds
                CHECK(v >= -1e-15);
                CHECK(v <= std::min(cdf(h), cdf(k)) + 1e-12);
                // monotone in rho (positive quadrant dependence)
                CHECK(v >= prev - 1e-12);
                prev = v;
                // excess consistency
                CHECK(std::fabs(bivariate_excess(h, k, rho) -
                                (v - cdf(h) * cdf(k))) <= 1e-12);
            }
        }
    }
}

TEST_CASE("bivariate cdf rejects |rho| > 1") {
    CHECK_THROWS_AS(bivariate_cdf(0.0, 0.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(bivariate_cdf(0.0, 0.0, -1.0001), std::domain_error);
    CHECK_THROWS_AS(bivariate_excess(0.0, 0.0, 2.0), std::domain_error);
}

TEST_CASE("bivariate args struct forwards") {
    const beq::normal::BivariateArgs args{0.0, 0.0, 0.5};
    CHECK(bivariate_cdf(args) == bivariate_cdf(0.0, 0.0, 0.5));
}
