#ifndef BEQ_THEORY_HPP
#define BEQ_THEORY_HPP

#include <cstdint>
#include <stdexcept>

#include "beq/ma_model.hpp"

namespace beq::theory {

class degenerate_variance_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Everything the standardized quantile statistic needs about one level p:
// the population quantile x_p, the density there, the long-run variance
// of the indicator sequence, and the normalizer a_p = sigma(x_p)/f(x_p).
struct QuantileSpec {
    double p = 0.0;
    double x_p = 0.0;
    double f_xp = 0.0;
    double sigma2_xp = 0.0;
    double a_p = 0.0;
};

// Long-run variance of I(X_i <= x_p + t*a_p*n^{-1/2}) at one (n, t).
struct ShiftedVariance {
    std::int64_t n = 0;
    double t = 0.0;
    double threshold = 0.0;
    double sigma2_nt = 0.0;
};

// Rate bookkeeping for the polynomial-decay regime: q = 2*floor((beta-3)/3),
// b = 1/(4+q), K_n = n^b, and the log-window L_n = b0*log n.
struct RateParameters {
    double beta;
    double b0;
    int q;
    double b;

    explicit RateParameters(double beta_in, double b0_in = 1.0);

    double K_n(double n) const;
    double L_n(double n) const;
};

/// Cov(I(X_1 <= x), I(X_j <= y)) for j >= 2; zero once j-1 >= m.
double indicator_cov(const ma::MovingAverageModel& model, std::int64_t j, double x,
                     double y);

/// sigma^2(c) = F(c)(1-F(c)) + 2 sum_{j=2..m} Cov(I(X_1<=c), I(X_j<=c)).
/// The series is exact: autocovariances vanish beyond lag m-1.
double long_run_variance(const ma::MovingAverageModel& model, double threshold);

QuantileSpec make_quantile_spec(const ma::MovingAverageModel& model, double p);

ShiftedVariance shifted_variance(const ma::MovingAverageModel& model,
                                 const QuantileSpec& spec, std::int64_t n, double t);

/// b_n(t) = sqrt(n) * (F(x_p + t*a_p*n^{-1/2}) - p) / sigma_{(n,t)}.
double b_n_t(const ma::MovingAverageModel& model, const QuantileSpec& spec,
             std::int64_t n, double t);

}  // namespace beq::theory

#endif
