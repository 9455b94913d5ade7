#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace walklis {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  double stderr_slope = 0.0;
  std::int64_t points = 0;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 2 points and
// non-constant x; r2 is clamped to [0, 1].
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  double stderr_slope = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::int64_t points = 0;
};

// Least squares on (log2 n, log2 value) over rows with window_lo <= n <=
// window_hi; needs >= 3 such rows and positive values.
ExponentFit fit_exponent(std::span<const std::int64_t> ns, std::span<const double> values,
                         double window_lo, double window_hi);

// Two-sample Kolmogorov-Smirnov statistic (samples need not be sorted).
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace walklis
