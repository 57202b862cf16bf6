#include "sglab/core/superadditive.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"

namespace sglab {

SuperadditiveReport superadditive_limit_check(const std::vector<double>& values, std::size_t window,
                                              double tolerance) {
  const std::size_t L = values.size();
  require(L >= 1, "superadditive check: empty sequence");
  require(window >= 1 && window < L, "superadditive check: window must be in [1, L)");
  SuperadditiveReport r;
  double scale = 0.0;
  for (double v : values) {
    require(std::isfinite(v), "superadditive check: nonfinite term");
    scale = std::max(scale, std::fabs(v));
  }
  const double tol = tolerance * std::max(1.0, scale);

  double sup = -INFINITY;
  for (std::size_t n = 1; n <= L; ++n) {
    const double ratio = values[n - 1] / static_cast<double>(n);
    r.ratio.push_back(ratio);
    sup = std::max(sup, ratio);
    r.running_sup.push_back(sup);
  }
  r.sup_estimate = sup;
  for (std::size_t n = 1; n + window <= L; ++n)
    r.incremental.push_back((values[n + window - 1] - values[n - 1]) / static_cast<double>(window));
  r.incremental_estimate = r.incremental.back();

  for (std::size_t n = 1; n <= L; ++n) {
    for (std::size_t m = 1; n + m <= L; ++m) {
      const double excess = values[n - 1] + values[m - 1] - values[n + m - 1];
      if (excess > tol) {
        if (!r.first_violation) r.first_violation = std::make_pair(n, m);
        ++r.violation_count;
        r.worst_violation = std::max(r.worst_violation, excess);
      }
    }
  }
  return r;
}

std::vector<double> tabulate_sequence(const std::function<double(std::size_t)>& q, std::size_t length) {
  std::vector<double> v(length);
  for (std::size_t n = 1; n <= length; ++n) v[n - 1] = q(n);
  return v;
}

}  // namespace sglab
