#include "walklis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walklis {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) throw std::invalid_argument("linear_fit: size mismatch");
  if (n < 2) throw std::invalid_argument("linear_fit: need at least 2 points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::invalid_argument("linear_fit: x values are constant");

  LinearFit fit;
  fit.points = static_cast<std::int64_t>(n);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;

  double ss_res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = (syy == 0.0) ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  fit.stderr_slope = (n > 2) ? std::sqrt(ss_res / static_cast<double>(n - 2) / sxx) : 0.0;
  return fit;
}

ExponentFit fit_exponent(std::span<const std::int64_t> ns, std::span<const double> values,
                         double window_lo, double window_hi) {
  if (ns.size() != values.size()) throw std::invalid_argument("fit_exponent: size mismatch");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double n = static_cast<double>(ns[i]);
    if (n < window_lo || n > window_hi) continue;
    if (!(values[i] > 0.0)) throw std::invalid_argument("fit_exponent: values must be positive");
    xs.push_back(std::log2(n));
    ys.push_back(std::log2(values[i]));
  }
  if (xs.size() < 3) throw std::invalid_argument("fit_exponent: need at least 3 points in window");

  const LinearFit lf = linear_fit(xs, ys);
  ExponentFit fit;
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r2 = lf.r2;
  fit.stderr_slope = lf.stderr_slope;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.points = lf.points;
  return fit;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace walklis
