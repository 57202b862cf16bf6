#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/order_parameter.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/rost/rost_sample.hpp"
#include "sglab/sk/experiments.hpp"

namespace sglab::rost {

// A fresh ROSt realization per outer sample.
using RostSource = std::function<RostSample(RandomStream&)>;

RostSource cascade_source(const OrderParameter& params, std::size_t m, bool with_dust = true);
RostSource sk_gibbs_source(const sk::ModelSpec& spec);
RostSource fixed_source(RostSample sample);

struct GEstimate {
  double g = 0.0, se = 0.0;
  double g1 = 0.0, g1_se = 0.0;
  double g2 = 0.0, g2_se = 0.0;
  std::size_t samples = 0;
  double max_tail = 0.0;
  std::vector<std::string> warnings;
};

// G1 = (1/M) E ln[sum xi prod_i 2 cosh(beta (eta^i + h)) / sum xi]
// G2 = (1/M) E ln[sum xi e^{beta sqrt(M) kappa} / sum xi]
GEstimate g_functional_estimate(const RostSource& source, std::size_t m, double beta, double h,
                                const CovarianceSeries& f, std::size_t n_outer, std::uint64_t seed);

struct IntegrabilityReport {
  Estimate kappa_term;  // E |ln sum xi e^{beta sqrt(M) kappa} / sum xi|
  Estimate v_term;      // E |ln sum xi prod 2 cosh(beta (eta + h)) / sum xi|
  double kappa_bound = 0.0;
  double v_bound = 0.0;
  bool holds = false;  // both means within bound + 3 se
};

IntegrabilityReport integrability_bounds_check(const RostSource& source, std::size_t m, double beta, double h,
                                               const CovarianceSeries& f, std::size_t n_outer,
                                               std::uint64_t seed);

}  // namespace sglab::rost
