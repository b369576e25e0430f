#include "minlab/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "minlab/error.hpp"

namespace minlab {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::argument, "line fit needs >= 2 paired samples");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorKind::argument, "line fit with constant abscissa");
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.max_residual =
        std::max(f.max_residual, std::abs(y[i] - f.intercept - f.slope * x[i]));
  }
  return f;
}

LineFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw Error(ErrorKind::argument, "power fit: x <= 0");
    lx[i] = std::log(x[i]);
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw Error(ErrorKind::degenerate, "power fit: y <= 0");
    ly[i] = std::log(y[i]);
  }
  return fit_line(lx, ly);
}

}  // namespace minlab
