#pragma once

#include <cstddef>
#include <span>

namespace mgm {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

// Ordinary least squares y = intercept + slope * x. Throws DegenerateError with
// fewer than two points or when all x coincide.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace mgm
