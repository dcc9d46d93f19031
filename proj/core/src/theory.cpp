#include "beq/theory.hpp"

#include <cmath>

#include "beq/normal.hpp"

namespace beq::theory {

RateParameters::RateParameters(double beta_in, double b0_in)
    : beta(beta_in), b0(b0_in) {
    if (!(beta > 6.0))
        throw std::domain_error("RateParameters: beta must be > 6");
    if (!(b0 > 0.0)) throw std::domain_error("RateParameters: b0 must be > 0");
    q = 2 * int(std::floor((beta - 3.0) / 3.0));
    b = 1.0 / (4.0 + double(q));
}

double RateParameters::K_n(double n) const { return std::pow(n, b); }

double RateParameters::L_n(double n) const { return b0 * std::log(n); }

double indicator_cov(const ma::MovingAverageModel& model, std::int64_t j, double x,
                     double y) {
    if (j < 2) throw std::domain_error("indicator_cov: j must be >= 2");
    const std::size_t lag = std::size_t(j) - 1;
    if (lag >= model.m) return 0.0;
    const double rho = ma::autocov(model, lag);
    if (rho == 0.0) return 0.0;
    return normal::bivariate_excess(x, y, rho);
}

double long_run_variance(const ma::MovingAverageModel& model, double threshold) {
    const double F = normal::cdf(threshold);
    double var = F * (1.0 - F);
    for (std::size_t j = 2; j <= model.m; ++j)
        var += 2.0 * indicator_cov(model, std::int64_t(j), threshold, threshold);
    return var;
}

QuantileSpec make_quantile_spec(const ma::MovingAverageModel& model, double p) {
    QuantileSpec spec;
    spec.p = p;
    spec.x_p = normal::quantile(p);
    spec.f_xp = normal::pdf(spec.x_p);
    spec.sigma2_xp = long_run_variance(model, spec.x_p);
    if (spec.sigma2_xp <= 1e-12)
        throw degenerate_variance_error(
            "make_quantile_spec: long-run variance is numerically zero");
    spec.a_p = std::sqrt(spec.sigma2_xp) / spec.f_xp;
    return spec;
}

ShiftedVariance shifted_variance(const ma::MovingAverageModel& model,
                                 const QuantileSpec& spec, std::int64_t n,
                                 double t) {
    if (n < 1) throw std::domain_error("shifted_variance: n must be >= 1");
    ShiftedVariance sv;
    sv.n = n;
    sv.t = t;
    sv.threshold = spec.x_p + t * spec.a_p / std::sqrt(double(n));
    sv.sigma2_nt = long_run_variance(model, sv.threshold);
    return sv;
}

double b_n_t(const ma::MovingAverageModel& model, const QuantileSpec& spec,
             std::int64_t n, double t) {
    const ShiftedVariance sv = shifted_variance(model, spec, n, t);
    if (sv.sigma2_nt <= 0.0)
        throw degenerate_variance_error("b_n_t: sigma_{(n,t)} is zero");
    return std::sqrt(double(n)) * (normal::cdf(sv.threshold) - spec.p) /
           std::sqrt(sv.sigma2_nt);
}

}  // namespace beq::theory
