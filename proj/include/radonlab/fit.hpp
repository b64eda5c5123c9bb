#pragma once

#include <span>
#include <vector>

namespace radonlab {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;
};

/// Least-squares line y = slope * x + intercept. Throws DegenerateFit when all
/// x coincide or fewer than two points are given.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// fit_line on (log x, log y).
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace radonlab
