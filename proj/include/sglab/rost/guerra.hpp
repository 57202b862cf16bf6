#pragma once

#include <cstddef>
#include <cstdint>

#include "sglab/core/order_parameter.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/parisi/solver.hpp"
#include "sglab/rost/functional.hpp"
#include "sglab/sk/disorder.hpp"

namespace sglab::rost {

struct GuerraReport {
  double parisi = 0.0;  // P[x]
  Estimate pressure;    // P_N
  double gap = 0.0;     // P[x] - P_N
  double se = 0.0;
  bool holds = false;   // gap >= -3 se
};

GuerraReport guerra_gap(std::size_t n, const OrderParameter& params, double beta, double h, std::size_t n_disorder,
                        std::uint64_t seed, sk::Variant variant = sk::Variant::diagonal,
                        const parisi::SolverSettings& settings = {});

struct SaturationReport {
  GEstimate g;           // G_M on Gibbs ROSts of the N-spin system
  Estimate incremental;  // (1/M) E ln(Z_{N+M} / Z_N)
  double difference = 0.0;
  double se = 0.0;
};

SaturationReport saturation_probe(std::size_t n, std::size_t m, double beta, double h, std::size_t n_disorder,
                                  std::uint64_t seed, sk::Variant variant = sk::Variant::diagonal);

}  // namespace sglab::rost
