#include "sglab/cascade/cascade.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/rem/point_process.hpp"

namespace sglab::cascade {

namespace {

void check_params(const OrderParameter& params, std::size_t m) {
  require(params.k() >= 1, "cascade needs at least one level");
  require(m >= 1, "cascade branching m must be at least 1");
  for (double x : params.x()) require(x < 1.0, "cascade levels need x_i < 1");
  double leaves = 1.0;
  for (std::size_t j = 0; j < params.k(); ++j) leaves *= static_cast<double>(m);
  require(leaves <= static_cast<double>(kMaxLeaves), "cascade has more than 1e6 leaves; lower m or k");
}

}  // namespace

Cascade build_cascade(const OrderParameter& params, std::size_t m, std::uint64_t key, bool with_dust) {
  check_params(params, m);
  const std::size_t k = params.k();
  Cascade c;
  c.params = params;
  c.m = m;
  c.with_dust = with_dust;
  c.factors.resize(k);

  std::vector<std::uint64_t> keys{key};
  std::vector<double> weight{1.0};
  std::vector<double> last_eps;
  for (std::size_t j = 0; j < k; ++j) {
    const double x = params.x()[j];
    const std::size_t nodes = keys.size();
    auto& fac = c.factors[j];
    fac.resize(nodes * m);
    std::vector<std::uint64_t> next_keys(j + 1 < k ? nodes * m : 0);
    std::vector<double> next_weight(nodes * m);
    if (j + 1 == k) last_eps.resize(nodes);
    for (std::size_t a = 0; a < nodes; ++a) {
      RandomStream rng(keys[a]);
      const auto top = rem::sample_rem_top(x, m, rng);
      for (std::size_t d = 0; d < m; ++d) {
        fac[a * m + d] = top.points[d];
        next_weight[a * m + d] = weight[a] * top.points[d];
        if (j + 1 < k) next_keys[a * m + d] = derive_seed(keys[a], d);
      }
      if (j + 1 == k) last_eps[a] = top.epsilon;
    }
    if (j + 1 == k) {
      const double xk = x;
      c.dust.assign(nodes, 0.0);
      if (with_dust)
        for (std::size_t a = 0; a < nodes; ++a) c.dust[a] = weight[a] * rem::truncated_tail_mean(xk, last_eps[a]);
    }
    keys = std::move(next_keys);
    weight = std::move(next_weight);
  }
  c.leaf_weights = std::move(weight);
  double z = 0.0;
  for (double w : c.leaf_weights) z += w;
  for (double d : c.dust) z += d;
  c.z = z;
  return c;
}

std::vector<double> Cascade::node_mass(std::size_t j) const {
  const std::size_t k = depth();
  require(j <= k, "node depth beyond the cascade");
  std::vector<double> mass(leaf_weights.size());
  for (std::size_t a = 0; a < mass.size(); ++a) mass[a] = leaf_weights[a] / z;
  if (j == k) return mass;
  std::vector<double> up(dust.size());
  for (std::size_t b = 0; b < up.size(); ++b) {
    double s = dust[b] / z;
    for (std::size_t d = 0; d < m; ++d) s += mass[b * m + d];
    up[b] = s;
  }
  mass = std::move(up);
  for (std::size_t level = k - 1; level > j; --level) {
    std::vector<double> next(mass.size() / m, 0.0);
    for (std::size_t a = 0; a < mass.size(); ++a) next[a / m] += mass[a];
    mass = std::move(next);
  }
  return mass;
}

nlohmann::json Cascade::to_json() const {
  nlohmann::json j;
  j["params"] = params.to_json();
  j["m"] = m;
  j["dust"] = dust;
  j["factors"] = factors;
  j["leaf_weights"] = leaf_weights;
  j["z"] = z;
  return j;
}

std::size_t shared_prefix(const Cascade& c, const LeafRef& a, const LeafRef& b) {
  const std::size_t k = c.depth();
  std::size_t da = a.dust ? k - 1 : k, db = b.dust ? k - 1 : k;
  std::size_t ia = a.index, ib = b.index;
  require(ia < (a.dust ? c.parents() : c.leaves()) && ib < (b.dust ? c.parents() : c.leaves()),
          "invalid cascade address");
  while (da > db) {
    ia /= c.m;
    --da;
  }
  while (db > da) {
    ib /= c.m;
    --db;
  }
  std::size_t d = da;
  while (ia != ib) {
    ia /= c.m;
    ib /= c.m;
    --d;
  }
  return d;
}

double overlap(const Cascade& c, const LeafRef& a, const LeafRef& b) {
  const std::size_t d = shared_prefix(c, a, b);
  return d == c.depth() ? 1.0 : c.params.q_at(d + 1);
}

double overlap_kernel(const Cascade& c, std::size_t a, std::size_t b) {
  return overlap(c, LeafRef{a, false}, LeafRef{b, false});
}

ReplicaSampler::ReplicaSampler(const Cascade& c) : leaves_(c.leaves()) {
  cumulative_.reserve(c.leaves() + c.parents());
  double s = 0.0;
  for (double w : c.leaf_weights) cumulative_.push_back(s += w);
  for (double d : c.dust) cumulative_.push_back(s += d);
}

LeafRef ReplicaSampler::operator()(RandomStream& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t i = static_cast<std::size_t>(it - cumulative_.begin());
  if (i >= cumulative_.size()) i = cumulative_.size() - 1;
  // zero-mass entries can never be hit by upper_bound, except at rounding
  if (i < leaves_) return {i, false};
  return {i - leaves_, true};
}

std::vector<LeafRef> sample_replicas(const Cascade& c, std::size_t n, RandomStream& rng) {
  ReplicaSampler pick(c);
  std::vector<LeafRef> out(n);
  for (auto& r : out) r = pick(rng);
  return out;
}

double stable_moment(double x, double s) {
  require(x > 0.0 && x < 1.0, "stable index must lie in (0, 1)");
  require(s < x, "moment E Z_x^s is finite only for s < x");
  return std::exp(std::lgamma(1.0 - s / x) - std::lgamma(1.0 - s) + (s / x) * std::lgamma(1.0 - x));
}

double normalization_scale(const OrderParameter& params) {
  require(params.k() >= 1, "cascade needs at least one level");
  const auto& x = params.x();
  double c = 1.0;
  for (std::size_t j = params.k() - 1; j >= 1; --j) c *= std::pow(stable_moment(x[j], x[j - 1]), 1.0 / x[j - 1]);
  return c;
}

}  // namespace sglab::cascade
