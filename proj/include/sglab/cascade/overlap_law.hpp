#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sglab/cascade/cascade.hpp"

namespace sglab::cascade {

// sum over depth-j nodes of the squared normalized mass, j = 1..k: the
// conditional probability that two replicas share a prefix of length >= j.
std::vector<double> coincidence_by_depth(const Cascade& c);

// CDF of the two-replica overlap at the levels q_1..q_k. P(q12 <= q_j) is
// compared with x_j = x(q_j).
struct OverlapLawReport {
  std::vector<double> levels;
  std::vector<double> target;
  std::vector<double> exact_cdf;  // 1 - coincidence, averaged over cascades
  std::vector<double> exact_se;
  std::vector<double> empirical_cdf;  // from sampled replica pairs
  std::vector<double> empirical_se;
  double below_q1 = 0.0;  // frequency of sampled overlaps below q_1
  double max_deviation = 0.0;        // empirical against target
  double exact_max_deviation = 0.0;  // exact against target
};

OverlapLawReport two_replica_overlap_law(const OrderParameter& params, std::size_t m, std::size_t cascades,
                                         std::size_t pairs_per_cascade, std::uint64_t seed, bool with_dust = true);

// Paired comparison of the exact CDF at m and 2m on the same cascades.
struct TruncationBias {
  std::vector<double> difference;  // cdf(2m) - cdf(m) per level
  std::vector<double> se;
  double max_abs = 0.0;
};

TruncationBias overlap_law_truncation_bias(const OrderParameter& params, std::size_t m, std::size_t cascades,
                                           std::uint64_t seed, bool with_dust = true);

}  // namespace sglab::cascade
