#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sglab/core/ks_test.hpp"
#include "sglab/rem/increment_law.hpp"
#include "sglab/rem/point_process.hpp"

namespace sglab::rem {

struct EvolveResult {
  PointConfiguration config;
  std::vector<double> increments;  // g~_n attached to the n-th new point
};

// xi~_n = g_{pi(n)} xi_{pi(n)} re-sorted in descending order.
EvolveResult evolve(const PointConfiguration& cfg, const IncrementLaw& g, RandomStream& rng);

enum class QsForm {
  normalized,    // xi~_n / Z~ against xi_n / Z
  corrected,     // xi~_n / K against xi_n
  uncorrected,   // xi~_n against xi_n (negative control when K != 1)
};

struct KsReport {
  std::vector<KsResult> per_rank;
  double combined_p = 1.0;  // Bonferroni over ranks
  bool pass = false;        // combined_p > 0.01
};

// Compares rank by rank, over `trials` runs, evolved configurations with
// fresh independent REM_x samples.
KsReport quasi_stationarity_test(double x, const IncrementLaw& g, double epsilon, std::size_t top_n,
                                 std::size_t trials, std::uint64_t seed, QsForm form = QsForm::normalized);

struct TiltReport {
  KsResult ks;                   // continuous laws: one-sample KS against the tilted law
  double frequency_a = 0.0;      // discrete laws: empirical P(g~ = a)
  double expected_frequency_a = 0.0;
  double rank_correlation = 0.0;  // corr(n, ln g~_n)
  double rank_correlation_se = 0.0;
  std::size_t count = 0;
  bool pass = false;
};

TiltReport tilted_increment_test(double x, const IncrementLaw& g, double epsilon, std::size_t top_n,
                                 std::size_t trials, std::uint64_t seed);

}  // namespace sglab::rem
