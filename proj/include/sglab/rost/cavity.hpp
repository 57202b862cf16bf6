#pragma once

#include <cstddef>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/rng.hpp"
#include "sglab/rost/rost_sample.hpp"

namespace sglab::rost {

inline constexpr double kTailTolerance = 1e-8;

// Cov(kappa_a, kappa_b) = phi(q_ab) / 2 and Cov(eta^i_a, eta^j_b) =
// delta_ij f'(q_ab) / 2, for the retained states.
//
// Dense kernels and general f on Gibbs states keep the heaviest states until
// the dropped normalized weight is at most 1e-8 (at most kStateGuard
// states). SK fields on Gibbs states are built from the spins directly and
// cascades from their tree, so neither is truncated; a cascade's dust gets
// the fields of its leaf parent plus the variance of the unseen increment.
struct CavityFields {
  std::size_t spins = 0;
  std::vector<std::size_t> states;
  std::vector<double> kappa;  // per retained state
  std::vector<double> eta;    // spins x retained states
  double tail_mass = 0.0;

  std::vector<double> dust_weight;  // per leaf parent, same scale as weights()
  std::vector<double> dust_kappa;
  std::vector<double> dust_eta;  // spins x parents
  double dust_kappa_variance = 0.0;
  double dust_eta_variance = 0.0;

  double eta_at(std::size_t spin, std::size_t state) const noexcept { return eta[spin * states.size() + state]; }
};

CavityFields cavity_fields(const RostSample& rost, std::size_t m, const CovarianceSeries& f, RandomStream& rng);

// Covariance matrices of the fields on the leading n states, for checks.
Matrix kappa_covariance(const RostSample& rost, std::size_t n, const CovarianceSeries& f);
Matrix eta_covariance(const RostSample& rost, std::size_t n, const CovarianceSeries& f);

}  // namespace sglab::rost
