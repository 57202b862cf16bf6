#include "sglab/cascade/overlap_law.hpp"

#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"

namespace sglab::cascade {

std::vector<double> coincidence_by_depth(const Cascade& c) {
  std::vector<double> out;
  for (std::size_t j = 1; j <= c.depth(); ++j) {
    double s = 0.0;
    for (double w : c.node_mass(j)) s += w * w;
    out.push_back(s);
  }
  return out;
}

OverlapLawReport two_replica_overlap_law(const OrderParameter& params, std::size_t m, std::size_t cascades,
                                         std::size_t pairs_per_cascade, std::uint64_t seed, bool with_dust) {
  require(cascades >= 2, "overlap law needs at least two cascades");
  const std::size_t k = params.k();
  struct Row {
    std::vector<double> exact, empirical;
    double below = 0.0;
  };
  auto rows = parallel_draws(cascades, seed, [&](std::size_t, RandomStream& rng) {
    const Cascade c = build_cascade(params, m, derive_seed(rng.key(), 0), with_dust);
    Row r;
    for (double s : coincidence_by_depth(c)) r.exact.push_back(1.0 - s);
    r.empirical.assign(k, 0.0);
    if (pairs_per_cascade > 0) {
      RandomStream pick_rng = rng.split(1);
      ReplicaSampler pick(c);
      std::size_t below = 0;
      for (std::size_t n = 0; n < pairs_per_cascade; ++n) {
        const LeafRef a = pick(pick_rng), b = pick(pick_rng);
        const double q = overlap(c, a, b);
        if (q < params.q_at(1)) ++below;
        for (std::size_t j = 0; j < k; ++j)
          if (q <= params.q()[j]) r.empirical[j] += 1.0;
      }
      for (auto& v : r.empirical) v /= static_cast<double>(pairs_per_cascade);
      r.below = static_cast<double>(below) / static_cast<double>(pairs_per_cascade);
    }
    return r;
  });
  OverlapLawReport rep;
  rep.levels = params.q();
  rep.target = params.x();
  RunningStats below;
  for (std::size_t j = 0; j < k; ++j) {
    RunningStats ex, em;
    for (const auto& r : rows) {
      ex.add(r.exact[j]);
      em.add(r.empirical[j]);
    }
    rep.exact_cdf.push_back(ex.mean());
    rep.exact_se.push_back(ex.stderr_mean());
    rep.exact_max_deviation = std::max(rep.exact_max_deviation, std::fabs(ex.mean() - rep.target[j]));
    if (pairs_per_cascade > 0) {
      rep.empirical_cdf.push_back(em.mean());
      rep.empirical_se.push_back(em.stderr_mean());
      rep.max_deviation = std::max(rep.max_deviation, std::fabs(em.mean() - rep.target[j]));
    }
  }
  for (const auto& r : rows) below.add(r.below);
  rep.below_q1 = below.mean();
  if (pairs_per_cascade == 0) rep.max_deviation = rep.exact_max_deviation;
  return rep;
}

TruncationBias overlap_law_truncation_bias(const OrderParameter& params, std::size_t m, std::size_t cascades,
                                           std::uint64_t seed, bool with_dust) {
  require(cascades >= 2, "truncation bias needs at least two cascades");
  auto rows = parallel_draws(cascades, seed, [&](std::size_t, RandomStream& rng) {
    const std::uint64_t key = derive_seed(rng.key(), 0);
    const auto small = coincidence_by_depth(build_cascade(params, m, key, with_dust));
    const auto large = coincidence_by_depth(build_cascade(params, 2 * m, key, with_dust));
    std::vector<double> d(small.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = small[j] - large[j];  // cdf(2m) - cdf(m)
    return d;
  });
  TruncationBias out;
  for (std::size_t j = 0; j < params.k(); ++j) {
    RunningStats s;
    for (const auto& r : rows) s.add(r[j]);
    out.difference.push_back(s.mean());
    out.se.push_back(s.stderr_mean());
    out.max_abs = std::max(out.max_abs, std::fabs(s.mean()));
  }
  return out;
}

}  // namespace sglab::cascade
