#include "radonlab/fit.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "radonlab/errors.hpp"

namespace radonlab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("fit needs matching x and y");
  if (x.size() < 2) throw DegenerateFit("fit needs at least two points");
  bool spread = false;
  for (const double xi : x) spread = spread || xi != x.front();
  if (!spread) throw DegenerateFit("all abscissae are equal");

  const Eigen::Index n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = x[i];
    design(i, 1) = 1.0;
    rhs(i) = y[i];
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  LineFit fit;
  fit.slope = coef(0);
  fit.intercept = coef(1);
  const Eigen::VectorXd res = rhs - design * coef;
  fit.residuals.assign(res.data(), res.data() + n);
  return fit;
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DegenerateFit("log-log fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_line(lx, ly);
}

}  // namespace radonlab
