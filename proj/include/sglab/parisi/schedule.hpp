#pragma once

#include <optional>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/order_parameter.hpp"

namespace sglab::parisi {

// What the recursion iterates over: x_j on [q_j, q_{j+1}), q_0 = 0 with
// x_0 = 0 and q_{k+1} = 1. Unlike OrderParameter, adjacent levels may share
// the same x and x_j = 0 is allowed, so redundant boundaries can be
// inserted and continuous x(q) can be discretized directly.
struct LevelSchedule {
  std::vector<double> x;
  std::vector<double> q;

  static LevelSchedule from(const OrderParameter& p);
  // x values in [0, 1], nondecreasing; q in [0, 1), strictly increasing
  static LevelSchedule make(std::vector<double> x, std::vector<double> q);

  std::size_t k() const noexcept { return x.size(); }
  double q_at(std::size_t i) const noexcept { return i == 0 ? 0.0 : (i > k() ? 1.0 : q[i - 1]); }
  double x_at(std::size_t i) const noexcept { return i == 0 ? 0.0 : (i > k() ? 1.0 : x[i - 1]); }

  // Adds a boundary at t (no-op if present), keeping x(q) unchanged.
  LevelSchedule with_boundary(double t) const;
  // Drops boundaries across which x does not change.
  LevelSchedule merged() const;

  // integral of q x(q) over [0, 1]
  double q_integral() const noexcept;
  // (1/2) sum_j x_j (phi(q_{j+1}) - phi(q_j)); equals q_integral() for SK
  double phi_integral(const CovarianceSeries& f) const;
};

}  // namespace sglab::parisi
