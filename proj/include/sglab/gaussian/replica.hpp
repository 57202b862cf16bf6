#pragma once

#include <functional>
#include <vector>

#include "sglab/core/stats.hpp"
#include "sglab/gaussian/family.hpp"

namespace sglab::gaussian {

// Weights xi_g > 0 reweighted by exp(-beta X_g) with X drawn from `family`
// at parameter t, then normalized.
struct WeightedReplicaMeasure {
  std::vector<double> xi;
  double beta = 1.0;
  GaussianFamily family;
  double t = 0.0;
};

// zeta_g = xi_g exp(-beta X_g) / sum, computed in log space.
std::vector<double> replica_weights(const std::vector<double>& xi, double beta, const std::vector<double>& x);

using ReplicaFunction = std::function<double(std::size_t, std::size_t)>;

// n = 1: E sum_g f(g, g) zeta_g; n = 2: E sum f(g, g') zeta_g zeta_g'.
Estimate replica_average(const WeightedReplicaMeasure& measure, const ReplicaFunction& f, int n,
                         std::uint64_t seed, std::size_t samples);

// Keeps the largest weights until the dropped tail is below rel_tol of the
// total. Returns the kept count and the dropped mass.
struct Truncation {
  std::size_t kept = 0;
  double tail_mass = 0.0;
  double total = 0.0;
};
Truncation truncate_weights(const std::vector<double>& descending_weights, double rel_tol = 1e-8);

}  // namespace sglab::gaussian
