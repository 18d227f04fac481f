#include "cohav/scaling_fit.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cohav {

PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& value) {
  return fit_power_law(n, value, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
}

PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& value, double n_min,
                          double n_max) {
  if (n.size() != value.size()) throw std::invalid_argument("fit: size mismatch");
  std::vector<double> lx, ly;
  PowerLawFit fit;
  fit.n_min = std::numeric_limits<double>::infinity();
  fit.n_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] < n_min || n[i] > n_max) continue;
    if (!(n[i] > 0.0) || !(value[i] > 0.0) || !std::isfinite(value[i])) {
      throw FitDomainError("fit: nonpositive value " + std::to_string(value[i]) + " at N = " + std::to_string(n[i]));
    }
    lx.push_back(std::log(n[i]));
    ly.push_back(std::log(value[i]));
    fit.n_min = std::min(fit.n_min, n[i]);
    fit.n_max = std::max(fit.n_max, n[i]);
  }
  const std::size_t k = lx.size();
  if (k < 3) throw FitDomainError("fit: need at least 3 points in the window, have " + std::to_string(k));

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= double(k);
  my /= double(k);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw FitDomainError("fit: all N equal");
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = ly[i] - intercept - fit.exponent * lx[i];
    ssr += r * r;
  }
  fit.stderr_exponent = std::sqrt(ssr / double(k - 2) / sxx);
  fit.prefactor = std::exp(intercept);
  fit.points = int(k);
  return fit;
}

double upper_half_start(double n_lo, double n_hi) { return std::sqrt(n_lo * n_hi); }

}  // namespace cohav
