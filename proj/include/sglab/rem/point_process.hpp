#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sglab/core/rng.hpp"

namespace sglab::rem {

// Points of REM_x (intensity x s^{-x-1} ds on (0, inf)) above epsilon, in
// strictly descending order.
struct PointConfiguration {
  double x = 0.5;
  double epsilon = 1.0;
  std::vector<double> points;
};

inline constexpr double kMaxExpectedPoints = 1e7;

// Points are generated as xi_n = Gamma_n^{-1/x} from the arrival times
// Gamma_n of a unit-rate Poisson process, which gives the descending order
// and the Poisson(eps^{-x}) count directly.
PointConfiguration sample_rem(double x, double epsilon, RandomStream& rng);

// The `count` largest points, whatever their size; epsilon is set to the
// next point, which is exactly the truncation level of the sample.
PointConfiguration sample_rem_top(double x, std::size_t count, RandomStream& rng);

struct PartitionSum {
  double z = 0.0;
  double tail_bound = 0.0;  // E sum of points below epsilon, x eps^{1-x} / (1 - x)
};

PartitionSum partition_sum(const PointConfiguration& cfg);

double truncated_tail_mean(double x, double epsilon);

struct OrderStatisticReport {
  std::vector<double> scaled_mean;  // mean of n^{1/x} xi_n, n = 1..n_max
  std::vector<double> scaled_se;
  std::vector<double> coverage;     // fraction of draws with xi_n > epsilon
  double inverse_power_mean = 0.0;  // mean of xi_1^{-x}
  double inverse_power_se = 0.0;
  bool partial = false;             // some n-th point fell below epsilon
};

// Each draw is extended past epsilon to n_max points (the arrival-time
// sequence does not depend on epsilon); coverage records how often the
// epsilon-truncated sample would have contained the n-th point.
OrderStatisticReport order_statistic_law_check(double x, double epsilon, std::size_t n_max, std::size_t draws,
                                               std::uint64_t seed);

}  // namespace sglab::rem
