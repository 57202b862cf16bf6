#include "sglab/rost/guerra.hpp"

#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/sk/experiments.hpp"

namespace sglab::rost {

GuerraReport guerra_gap(std::size_t n, const OrderParameter& params, double beta, double h, std::size_t n_disorder,
                        std::uint64_t seed, sk::Variant variant, const parisi::SolverSettings& settings) {
  require(variant != sk::Variant::general, "Guerra gap: classic or diagonal variant");
  GuerraReport out;
  out.parisi = parisi::parisi_functional(params, beta, h, settings).value;
  out.pressure = sk::quenched_pressure(sk::ModelSpec{n, beta, h, variant, std::nullopt}, n_disorder, seed);
  out.gap = out.parisi - out.pressure.mean;
  out.se = out.pressure.se;
  out.holds = out.gap >= -3.0 * out.se;
  return out;
}

SaturationReport saturation_probe(std::size_t n, std::size_t m, double beta, double h, std::size_t n_disorder,
                                  std::uint64_t seed, sk::Variant variant) {
  require(variant != sk::Variant::general, "saturation probe: classic or diagonal variant");
  require(m >= 1 && 4 * m <= n, "saturation probe: need 1 <= M <= N / 4");
  require(n_disorder >= 2, "saturation probe: need at least two disorder draws");
  SaturationReport out;
  // Gibbs ROSt draw d and the direct increment draw d share the N-spin couplings
  out.g = g_functional_estimate(sk_gibbs_source(sk::ModelSpec{n, beta, h, variant, std::nullopt}), m, beta, h,
                                CovarianceSeries::sk(), n_disorder, seed);
  out.incremental = sk::incremental_pressure(n, m, beta, h, variant, n_disorder, seed);
  out.difference = out.g.g - out.incremental.mean;
  out.se = std::hypot(out.g.se, out.incremental.se);
  return out;
}

}  // namespace sglab::rost
