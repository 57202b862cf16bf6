#pragma once

#include "sglab/sk/disorder.hpp"

namespace sglab::sk {

struct GibbsSummary {
  double log_z = 0.0;
  double mean_energy = 0.0;  // Gibbs average of H
};

// Exhaustive sum over all 2^N configurations in Gray-code order with
// incremental local fields, max-shifted.
GibbsSummary enumerate_gibbs(const DisorderSample& d);

double exact_log_partition(const DisorderSample& d);

}  // namespace sglab::sk
