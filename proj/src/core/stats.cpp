#include "sglab/core/stats.hpp"

#include <algorithm>

namespace sglab {

Estimate summarize(const std::vector<double>& values) {
  RunningStats s;
  for (double v : values) s.add(v);
  return s.estimate();
}

double standard_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double log_sum_exp(const std::vector<double>& v) {
  if (v.empty()) return -INFINITY;
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double a : v) s += std::exp(a - m);
  return m + std::log(s);
}

}  // namespace sglab
