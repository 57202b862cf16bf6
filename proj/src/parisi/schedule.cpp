#include "sglab/parisi/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"

namespace sglab::parisi {

LevelSchedule LevelSchedule::from(const OrderParameter& p) { return make(p.x(), p.q()); }

LevelSchedule LevelSchedule::make(std::vector<double> x, std::vector<double> q) {
  require(x.size() == q.size(), "schedule: x and q must have the same length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && x[i] >= 0.0 && x[i] <= 1.0, "schedule: x_j must lie in [0, 1]");
    require(std::isfinite(q[i]) && q[i] >= 0.0 && q[i] < 1.0, "schedule: q_j must lie in [0, 1)");
    if (i > 0) {
      require(x[i] >= x[i - 1], "schedule: x must be nondecreasing");
      require(q[i] > q[i - 1], "schedule: q must be strictly increasing");
    }
  }
  return LevelSchedule{std::move(x), std::move(q)};
}

LevelSchedule LevelSchedule::with_boundary(double t) const {
  require(t >= 0.0 && t < 1.0, "inserted boundary must lie in [0, 1)");
  if (std::find(q.begin(), q.end(), t) != q.end()) return *this;
  const auto pos = static_cast<std::size_t>(std::upper_bound(q.begin(), q.end(), t) - q.begin());
  LevelSchedule out = *this;
  out.q.insert(out.q.begin() + static_cast<std::ptrdiff_t>(pos), t);
  out.x.insert(out.x.begin() + static_cast<std::ptrdiff_t>(pos), x_at(pos));
  return out;
}

LevelSchedule LevelSchedule::merged() const {
  LevelSchedule out;
  double prev = 0.0;
  for (std::size_t i = 0; i < k(); ++i) {
    if (x[i] == prev) continue;
    out.x.push_back(x[i]);
    out.q.push_back(q[i]);
    prev = x[i];
  }
  return out;
}

double LevelSchedule::q_integral() const noexcept {
  double s = 0.0;
  for (std::size_t j = 1; j <= k(); ++j) {
    const double a = q_at(j), b = q_at(j + 1);
    s += x_at(j) * (b * b - a * a) * 0.5;
  }
  return s;
}

double LevelSchedule::phi_integral(const CovarianceSeries& f) const {
  double s = 0.0;
  for (std::size_t j = 1; j <= k(); ++j) s += x_at(j) * (f.phi(q_at(j + 1)) - f.phi(q_at(j)));
  return 0.5 * s;
}

}  // namespace sglab::parisi
