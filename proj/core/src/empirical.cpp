#include "beq/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beq::empirical {

namespace {

void require_p(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("empirical: quantile level p must lie in (0,1)");
}

void require_nonempty(std::size_t n) {
    if (n == 0) throw std::invalid_argument("empirical: sample must be nonempty");
}

}  // namespace

std::size_t order_statistic_index(std::size_t n, double p) {
    require_p(p);
    require_nonempty(n);
    const double np = double(n) * p;
    const double nearest = std::nearbyint(np);
    double k = std::fabs(np - nearest) <= 1e-9 ? nearest : std::ceil(np);
    k = std::clamp(k, 1.0, double(n));
    return std::size_t(k) - 1;
}

double ecdf(std::span<const double> sample, double x) {
    require_nonempty(sample.size());
    std::size_t count = 0;
    for (double v : sample) count += (v <= x);
    return double(count) / double(sample.size());
}

double sample_quantile(std::span<const double> sample, double p) {
    std::vector<double> scratch(sample.begin(), sample.end());
    return sample_quantile_in_place(scratch, p);
}

double sample_quantile_in_place(std::span<double> sample, double p) {
    const std::size_t idx = order_statistic_index(sample.size(), p);
    std::nth_element(sample.begin(), sample.begin() + std::ptrdiff_t(idx),
                     sample.end());
    return sample[idx];
}

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
    require_nonempty(values_.size());
    for (double v : values_)
        if (!std::isfinite(v))
            throw std::invalid_argument("empirical: sample values must be finite");
}

void Sample::sort_cache() {
    if (sorted_.empty()) {
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
    }
}

double Sample::ecdf(double x) const {
    if (!sorted_.empty()) {
        const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
        return double(it - sorted_.begin()) / double(sorted_.size());
    }
    return empirical::ecdf(values_, x);
}

double Sample::quantile(double p) const {
    if (!sorted_.empty()) return sorted_[order_statistic_index(sorted_.size(), p)];
    return sample_quantile(values_, p);
}

}  // namespace beq::empirical
