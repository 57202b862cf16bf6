#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/sk/disorder.hpp"

namespace sglab::sk {

struct ModelSpec {
  std::size_t n = 0;
  double beta = 1.0;
  double h = 0.0;
  Variant variant = Variant::classic;
  std::optional<CovarianceSeries> f;  // general variant only
};

// (1/N) ln Z for draws d = 0..n_disorder-1, draw d keyed by derive_seed(seed, d).
std::vector<double> pressure_samples(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed);

// Mean and standard error of the above; beta = 0 returns ln 2 exactly.
Estimate quenched_pressure(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed);

// Gibbs mean of H / N averaged over disorder, for the energy-pressure identity.
Estimate quenched_energy(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed);

struct SuperadditivityResult {
  Estimate sum;    // Q_N + Q_M
  Estimate joint;  // Q_{N+M}
  double gap = 0.0;
  double se = 0.0;
};

// Q_K = E ln Z_K, diagonal variant, independent draws for the three sizes.
SuperadditivityResult superadditivity_experiment(std::size_t n, std::size_t m, double beta, double h,
                                                 std::size_t n_disorder, std::uint64_t seed);

// Gap by integrating the interpolation derivative over t in [0, 1] on the
// exhaustive configuration set (small N + M only).
Estimate superadditivity_gap_by_interpolation(std::size_t n, std::size_t m, double beta, double h, int nodes,
                                              std::size_t samples, std::uint64_t seed);

// Covariances of the two endpoint families of the interpolation:
// c0 = (N/2) q_a^2 + (M/2) q_s^2, c1 = ((N+M)/2) q^2.
void interpolation_covariances(std::size_t n, std::size_t m, Matrix& c0, Matrix& c1);

// (1/M) E ln(Z_{N+M} / Z_N) with the first N spins' couplings shared.
Estimate incremental_pressure(std::size_t n, std::size_t m, double beta, double h, Variant variant,
                              std::size_t n_disorder, std::uint64_t seed);

// Per-draw increments (1/M) ln(Z_{N+M}/Z_N) for draw key derive_seed(seed, d).
std::vector<double> incremental_samples(std::size_t n, std::size_t m, double beta, double h, Variant variant,
                                        std::size_t n_disorder, std::uint64_t seed);

struct GroundStateStudy {
  Estimate energy;  // mean H/N
  std::vector<double> per_draw;
};

enum class GroundStateAlgo { greedy, spectral };

GroundStateStudy ground_state_study(GroundStateAlgo algo, std::size_t n, std::size_t n_disorder,
                                    std::uint64_t seed);

}  // namespace sglab::sk
