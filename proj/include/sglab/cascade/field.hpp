#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "sglab/cascade/cascade.hpp"
#include "sglab/core/covariance_series.hpp"

namespace sglab::cascade {

// The field covariance between two leaves is g(overlap); g must be
// nondecreasing on [0, 1].
using Profile = std::function<double(double)>;

Profile overlap_profile();                            // g(q) = q
Profile cavity_profile(const CovarianceSeries& f);    // f'(q) / 2
Profile fugacity_profile(const CovarianceSeries& f);  // (q f'(q) - f(q)) / 2

// eta_{i,a} as a sum of independent increments on the root-to-leaf path.
// The root carries variance g(q_1), a depth-j node g(q_{j+1}) - g(q_j).
// With t < 1 every q is replaced by min(t, q), which gives covariance
// g(min(t, overlap)).
struct HierarchicalField {
  std::size_t n_spins = 0;
  std::size_t leaves = 0;
  std::size_t parents = 0;
  std::vector<double> leaf;    // n_spins x leaves
  std::vector<double> parent;  // n_spins x parents, for the dust
  double leaf_variance = 0.0;  // variance of the last increment

  double at(std::size_t spin, std::size_t a) const noexcept { return leaf[spin * leaves + a]; }
  double at_parent(std::size_t spin, std::size_t b) const noexcept { return parent[spin * parents + b]; }
};

HierarchicalField hierarchical_field(const Cascade& c, std::size_t n_spins, RandomStream& rng, double t = 1.0,
                                     const Profile& g = overlap_profile());

}  // namespace sglab::cascade
