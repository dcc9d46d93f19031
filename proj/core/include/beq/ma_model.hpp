#ifndef BEQ_MA_MODEL_HPP
#define BEQ_MA_MODEL_HPP

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "beq/rng.hpp"

namespace beq::ma {

// Weight schemes for X_k = sum_{j=1..m} a_j e_{k+j}.  All weights are
// strictly positive, which makes the sequence associated (increasing
// functions of iid innovations).
struct ExponentialScheme {
    double rho;  // a_j = rho^j, rho in (0,1)
};
struct PolynomialScheme {
    double s;  // a_j = j^{-s}, s > 0
};
using CoefficientScheme = std::variant<ExponentialScheme, PolynomialScheme>;

// Finite Gaussian moving average with unit-variance marginals.  The
// innovation variance is 1/sum a_j^2 so that Var(X_k) = 1 exactly.
struct MovingAverageModel {
    std::size_t m = 0;
    CoefficientScheme scheme;
    std::vector<double> weights;  // a_1..a_m
    double innovation_variance = 0.0;
};

MovingAverageModel build_model(const CoefficientScheme& scheme, std::size_t m);

/// Exact autocovariance Cov(X_1, X_{1+k}); zero for k >= m.
double autocov(const MovingAverageModel& model, std::size_t k);

/// Simulates X_1..X_n, drawing the n+m-1 innovations e_2..e_{n+m}
/// sequentially from the stream so paths replay exactly.
std::vector<double> simulate_path(const MovingAverageModel& model, std::size_t n,
                                  rng::RandomStream& stream);

/// Allocation-free variant: out.size() = n, innovations.size() = n+m-1.
void simulate_path_into(const MovingAverageModel& model, rng::RandomStream& stream,
                        std::span<double> innovations, std::span<double> out);

enum class DecayKind { exponential, polynomial };

// Fitted envelope autocov(k) <= amplitude * exp(-rate*k) (exponential)
// or amplitude * k^{-rate} (polynomial), dominating every lag 1..m-1.
struct DecayFit {
    DecayKind kind = DecayKind::exponential;
    double amplitude = 0.0;  // a0 (exponential) or a1 (polynomial)
    double rate = 0.0;       // a (exponential) or beta (polynomial)
    double max_violation = 0.0;
    std::size_t lags_used = 0;
    std::size_t lags_skipped = 0;
};

/// Smallest constants of the requested form dominating the autocovariance
/// at lags 1..m-1 (least-squares envelope, shifted to dominance).
/// Non-positive lags are skipped; with no usable lag the trivial bound
/// amplitude = 0 is returned.
DecayFit fit_decay(const MovingAverageModel& model, DecayKind kind);

}  // namespace beq::ma

#endif
