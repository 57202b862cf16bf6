#include "sglab/rem/point_process.hpp"

#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"

namespace sglab::rem {

namespace {
void check_x(double x) { require(x > 0.0 && x < 1.0, "REM parameter x must lie in (0, 1)"); }
}  // namespace

PointConfiguration sample_rem(double x, double epsilon, RandomStream& rng) {
  check_x(x);
  require(epsilon > 0.0 && std::isfinite(epsilon), "epsilon must be positive");
  const double horizon = std::pow(epsilon, -x);
  require(horizon <= kMaxExpectedPoints, "epsilon^{-x} above 1e7 expected points; use a larger epsilon");
  PointConfiguration cfg{x, epsilon, {}};
  double gamma = 0.0;
  for (;;) {
    gamma += rng.exponential();
    if (gamma >= horizon) break;
    cfg.points.push_back(std::pow(gamma, -1.0 / x));
  }
  return cfg;
}

PointConfiguration sample_rem_top(double x, std::size_t count, RandomStream& rng) {
  check_x(x);
  require(count >= 1, "need at least one point");
  require(static_cast<double>(count) <= kMaxExpectedPoints, "point count above the memory guard");
  PointConfiguration cfg{x, 0.0, {}};
  cfg.points.reserve(count);
  double gamma = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    gamma += rng.exponential();
    cfg.points.push_back(std::pow(gamma, -1.0 / x));
  }
  gamma += rng.exponential();
  cfg.epsilon = std::pow(gamma, -1.0 / x);
  return cfg;
}

double truncated_tail_mean(double x, double epsilon) {
  check_x(x);
  return x * std::pow(epsilon, 1.0 - x) / (1.0 - x);
}

PartitionSum partition_sum(const PointConfiguration& cfg) {
  PartitionSum s;
  // ascending order keeps the rounding small
  for (auto it = cfg.points.rbegin(); it != cfg.points.rend(); ++it) s.z += *it;
  s.tail_bound = truncated_tail_mean(cfg.x, cfg.epsilon);
  return s;
}

OrderStatisticReport order_statistic_law_check(double x, double epsilon, std::size_t n_max, std::size_t draws,
                                               std::uint64_t seed) {
  check_x(x);
  require(epsilon > 0.0, "epsilon must be positive");
  require(n_max >= 1 && draws >= 2, "order statistics: need n_max >= 1 and at least two draws");
  struct Row {
    std::vector<double> scaled;
    std::vector<char> covered;
  };
  auto rows = parallel_draws(draws, seed, [&](std::size_t, RandomStream& rng) {
    Row r;
    r.scaled.resize(n_max);
    r.covered.resize(n_max);
    double gamma = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      gamma += rng.exponential();
      const double xi = std::pow(gamma, -1.0 / x);
      r.scaled[n - 1] = std::pow(static_cast<double>(n), 1.0 / x) * xi;
      r.covered[n - 1] = xi > epsilon;
    }
    return r;
  });
  OrderStatisticReport out;
  std::vector<RunningStats> acc(n_max);
  std::vector<std::size_t> cover(n_max, 0);
  RunningStats inv;
  for (const auto& r : rows) {
    for (std::size_t n = 0; n < n_max; ++n) {
      acc[n].add(r.scaled[n]);
      cover[n] += r.covered[n];
    }
    inv.add(std::pow(r.scaled[0], -x));
  }
  for (std::size_t n = 0; n < n_max; ++n) {
    out.scaled_mean.push_back(acc[n].mean());
    out.scaled_se.push_back(acc[n].stderr_mean());
    out.coverage.push_back(static_cast<double>(cover[n]) / static_cast<double>(draws));
    if (cover[n] < draws) out.partial = true;
  }
  out.inverse_power_mean = inv.mean();
  out.inverse_power_se = inv.stderr_mean();
  return out;
}

}  // namespace sglab::rem
