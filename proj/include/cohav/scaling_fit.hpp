#pragma once

// Least-squares power-law fits v = c N^p on log-log axes.

#include <stdexcept>
#include <vector>

namespace cohav {

/// Values that cannot be fitted on log axes (nonpositive, too few points).
class FitDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct PowerLawFit {
  double exponent = 0.0;
  double stderr_exponent = 0.0;
  double prefactor = 0.0;
  double n_min = 0.0;
  double n_max = 0.0;
  int points = 0;
};

/// Slope of log(value) against log(n). Needs >= 3 points, all positive.
PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& value);

/// Fit restricted to n_min <= n <= n_max.
PowerLawFit fit_power_law(const std::vector<double>& n, const std::vector<double>& value, double n_min,
                          double n_max);

/// Lower edge of the upper half of [n_lo, n_hi] on a log axis: sqrt(n_lo n_hi).
double upper_half_start(double n_lo, double n_hi);

}  // namespace cohav
