#ifndef BEQ_FITTING_HPP
#define BEQ_FITTING_HPP

#include <cstddef>
#include <span>

namespace beq::fitting {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
    std::size_t points = 0;
};

/// Least-squares line through (x_i, y_i).  Requires at least two points
/// and non-constant x; throws std::invalid_argument otherwise.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace beq::fitting

#endif
