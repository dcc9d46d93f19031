#ifndef BEQ_EMPIRICAL_HPP
#define BEQ_EMPIRICAL_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace beq::empirical {

/// Zero-based index of the ceil(n*p)-th order statistic.  n*p values
/// within 1e-9 of an integer are snapped to it so that grid-aligned p
/// (0.2 with n=100, say) never misclassifies across the ceiling.
std::size_t order_statistic_index(std::size_t n, double p);

/// F_n(x) = (# values <= x) / n over an unsorted sample.
double ecdf(std::span<const double> sample, double x);

/// Sample p-quantile inf{x : F_n(x) >= p}, i.e. the ceil(n*p)-th order
/// statistic.  Selects in expected linear time on a scratch copy.
/// Throws std::domain_error for p outside (0,1).
double sample_quantile(std::span<const double> sample, double p);

/// Same quantile, selecting in place (the span is reordered).  Hot-loop
/// variant for buffers that are scratch anyway.
double sample_quantile_in_place(std::span<double> sample, double p);

// Sample with an optional sorted cache.  Construction validates that
// the data is nonempty and finite.  Call sort_cache() once before
// sharing across threads; afterwards ecdf is O(log n) and quantile O(1).
class Sample {
  public:
    explicit Sample(std::vector<double> values);

    double ecdf(double x) const;
    double quantile(double p) const;
    void sort_cache();

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> values_;
    std::vector<double> sorted_;
};

}  // namespace beq::empirical

#endif
