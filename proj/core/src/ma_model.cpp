#include "beq/ma_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "beq/fitting.hpp"

namespace beq::ma {

MovingAverageModel build_model(const CoefficientScheme& scheme, std::size_t m) {
    if (m == 0) throw std::domain_error("build_model: order m must be >= 1");

    MovingAverageModel model;
    model.m = m;
    model.scheme = scheme;
    model.weights.resize(m);
    if (const auto* e = std::get_if<ExponentialScheme>(&scheme)) {
        if (!(e->rho > 0.0 && e->rho < 1.0))
            throw std::domain_error("build_model: exponential rho must lie in (0,1)");
        double w = 1.0;
        for (std::size_t j = 0; j < m; ++j) model.weights[j] = (w *= e->rho);
    } else {
        const auto& p = std::get<PolynomialScheme>(scheme);
        if (!(p.s > 0.0))
            throw std::domain_error("build_model: polynomial s must be > 0");
        for (std::size_t j = 0; j < m; ++j)
            model.weights[j] = std::pow(double(j + 1), -p.s);
    }

    double ssq = 0.0;
    for (double w : model.weights) ssq += w * w;
    model.innovation_variance = 1.0 / ssq;
    return model;
}

double autocov(const MovingAverageModel& model, std::size_t k) {
    if (k >= model.m) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j + k < model.m; ++j)
        sum += model.weights[j] * model.weights[j + k];
    return model.innovation_variance * sum;
}

void simulate_path_into(const MovingAverageModel& model, rng::RandomStream& stream,
                        std::span<double> innovations, std::span<double> out) {
    const std::size_t n = out.size();
    if (innovations.size() != n + model.m - 1)
        throw std::invalid_argument("simulate_path: innovation buffer size mismatch");
    const double sd = std::sqrt(model.innovation_variance);
    for (double& e : innovations) e = sd * stream.next_gaussian();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < model.m; ++j)
            acc += model.weights[j] * innovations[i + j];
        out[i] = acc;
    }
}

std::vector<double> simulate_path(const MovingAverageModel& model, std::size_t n,
                                  rng::RandomStream& stream) {
    if (n == 0) throw std::domain_error("simulate_path: n must be >= 1");
    std::vector<double> out(n);
    std::vector<double> innovations(n + model.m - 1);
    simulate_path_into(model, stream, innovations, out);
    return out;
}

DecayFit fit_decay(const MovingAverageModel& model, DecayKind kind) {
    DecayFit fit;
    fit.kind = kind;

    std::vector<double> xs, ys;
    std::vector<std::size_t> lags;
    for (std::size_t k = 1; k < model.m; ++k) {
        const double g = autocov(model, k);
        if (g <= 0.0) {
            ++fit.lags_skipped;
            continue;
        }
        lags.push_back(k);
        xs.push_back(kind == DecayKind::exponential ? double(k)
                                                    : std::log(double(k)));
        ys.push_back(std::log(g));
    }
    fit.lags_used = lags.size();

    if (lags.empty()) {
        // All covariances vanish (m = 1, in particular): amplitude 0 works.
        fit.amplitude = 0.0;
        fit.rate = 1.0;
        fit.max_violation = 0.0;
        return fit;
    }

    if (lags.size() == 1) {
        fit.rate = 1.0;
    } else {
        const auto line = fitting::fit_line(xs, ys);
        fit.rate = -line.slope;
        if (!(fit.rate > 0.0))
            throw std::runtime_error("fit_decay: autocovariance does not decay");
    }

    // Shift the envelope up until it dominates every usable lag.
    double amplitude = 0.0;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double k = double(lags[i]);
        const double g = std::exp(ys[i]);
        const double shape = kind == DecayKind::exponential
                                 ? std::exp(-fit.rate * k)
                                 : std::pow(k, -fit.rate);
        amplitude = std::max(amplitude, g / shape);
    }
    fit.amplitude = amplitude;

    double violation = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < model.m; ++k) {
        const double g = autocov(model, k);
        const double bound = kind == DecayKind::exponential
                                 ? amplitude * std::exp(-fit.rate * double(k))
                                 : amplitude * std::pow(double(k), -fit.rate);
        violation = std::max(violation, g - bound);
    }
    fit.max_violation = violation;
    return fit;
}

}  // namespace beq::ma
