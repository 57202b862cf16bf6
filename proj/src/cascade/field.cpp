#include "sglab/cascade/field.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"

namespace sglab::cascade {

Profile overlap_profile() {
  return [](double q) { return q; };
}

Profile cavity_profile(const CovarianceSeries& f) {
  return [f](double q) { return 0.5 * f.fprime(q); };
}

Profile fugacity_profile(const CovarianceSeries& f) {
  return [f](double q) { return 0.5 * f.phi(q); };
}

HierarchicalField hierarchical_field(const Cascade& c, std::size_t n_spins, RandomStream& rng, double t,
                                     const Profile& g) {
  require(t >= 0.0 && t <= 1.0, "field truncation t must lie in [0, 1]");
  const std::size_t k = c.depth();
  auto gt = [&](double q) { return g(std::min(t, q)); };
  // sd[0] is the root, sd[j] the depth-j increment
  std::vector<double> sd(k + 1);
  double prev = 0.0;
  for (std::size_t j = 0; j <= k; ++j) {
    const double cur = gt(c.params.q_at(j + 1));
    double v = j == 0 ? cur : cur - prev;
    require(v > -1e-12, "field profile must be nondecreasing");
    v = std::max(v, 0.0);
    sd[j] = std::sqrt(v);
    prev = cur;
  }

  HierarchicalField out;
  out.n_spins = n_spins;
  out.leaves = c.leaves();
  out.parents = c.parents();
  out.leaf.resize(n_spins * out.leaves);
  out.parent.resize(n_spins * out.parents);
  out.leaf_variance = sd[k] * sd[k];

  std::vector<double> cur, next;
  for (std::size_t i = 0; i < n_spins; ++i) {
    cur.assign(1, sd[0] * rng.normal());
    for (std::size_t j = 1; j <= k; ++j) {
      if (j == k) std::copy(cur.begin(), cur.end(), out.parent.begin() + static_cast<std::ptrdiff_t>(i * out.parents));
      next.resize(cur.size() * c.m);
      for (std::size_t a = 0; a < cur.size(); ++a)
        for (std::size_t d = 0; d < c.m; ++d) next[a * c.m + d] = cur[a] + sd[j] * rng.normal();
      cur.swap(next);
    }
    std::copy(cur.begin(), cur.end(), out.leaf.begin() + static_cast<std::ptrdiff_t>(i * out.leaves));
  }
  return out;
}

}  // namespace sglab::cascade
