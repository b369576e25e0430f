#pragma once

#include <span>

namespace minlab {

// Ordinary least squares y ~ intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

// Throws ErrorKind::argument for mismatched sizes, fewer than 2 points or
// constant x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// fit_line on (log x, log y); all inputs must be positive.
LineFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace minlab
