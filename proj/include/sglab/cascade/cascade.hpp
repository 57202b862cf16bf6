#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "sglab/core/order_parameter.hpp"
#include "sglab/core/rng.hpp"

namespace sglab::cascade {

inline constexpr std::size_t kMaxLeaves = 1000000;

// Ruelle cascade truncated to the top m atoms of every node's REM sample.
//
// Nodes at depth j are numbered 0..m^j-1 so that the children of node a are
// a*m .. a*m+m-1; leaves sit at depth k. Below every leaf parent the atoms
// past the m-th are replaced by their conditional mean mass ("dust"): a
// continuum of vanishing atoms that never coincide with each other and have
// overlap q_k with every sibling.
struct Cascade {
  OrderParameter params;
  std::size_t m = 0;
  bool with_dust = true;
  // factors[j] are the depth-(j+1) atoms, one descending block of m per node
  std::vector<std::vector<double>> factors;
  std::vector<double> leaf_weights;  // product of path factors, tree order
  std::vector<double> dust;          // per leaf parent (depth k-1), unnormalized
  double z = 0.0;                    // leaves plus dust

  std::size_t depth() const noexcept { return params.k(); }
  std::size_t leaves() const noexcept { return leaf_weights.size(); }
  std::size_t parents() const noexcept { return dust.size(); }
  double p(std::size_t leaf) const noexcept { return leaf_weights[leaf] / z; }
  double dust_p(std::size_t parent) const noexcept { return dust[parent] / z; }

  // Normalized subtree masses of the depth-j nodes, j in [0, k]. At depth k
  // these are the leaf weights alone; above, dust is included.
  std::vector<double> node_mass(std::size_t j) const;

  nlohmann::json to_json() const;
};

// Each node samples from its own stream, keyed by its path of child digits,
// so a cascade with larger m extends the smaller one built from the same key.
Cascade build_cascade(const OrderParameter& params, std::size_t m, std::uint64_t key, bool with_dust = true);

// A sampled replica: a leaf, or the dust under a leaf parent.
struct LeafRef {
  std::size_t index = 0;
  bool dust = false;
  bool operator==(const LeafRef&) const = default;
};

// Shared-prefix length j maps to q_{j+1}; a leaf with itself has overlap 1.
double overlap_kernel(const Cascade& c, std::size_t a, std::size_t b);
double overlap(const Cascade& c, const LeafRef& a, const LeafRef& b);
std::size_t shared_prefix(const Cascade& c, const LeafRef& a, const LeafRef& b);

class ReplicaSampler {
 public:
  explicit ReplicaSampler(const Cascade& c);
  LeafRef operator()(RandomStream& rng) const;

 private:
  std::vector<double> cumulative_;
  std::size_t leaves_ = 0;
};

std::vector<LeafRef> sample_replicas(const Cascade& c, std::size_t n, RandomStream& rng);

// E Z_x^s for the total mass of REM_x, s < x.
double stable_moment(double x, double s);

// Z of the untruncated cascade has the law of scale * Z_{x_1}.
double normalization_scale(const OrderParameter& params);

}  // namespace sglab::cascade
