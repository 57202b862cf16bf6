#include "sglab/gaussian/replica.hpp"

#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"

namespace sglab::gaussian {

std::vector<double> replica_weights(const std::vector<double>& xi, double beta, const std::vector<double>& x) {
  require(xi.size() == x.size(), "replica weights: size mismatch");
  std::vector<double> lw(xi.size());
  double m = -INFINITY;
  for (std::size_t g = 0; g < xi.size(); ++g) {
    lw[g] = std::log(xi[g]) - beta * x[g];
    m = std::max(m, lw[g]);
  }
  if (!std::isfinite(m)) throw NumericalError("replica weights: nonfinite log weight");
  double s = 0.0;
  for (auto& v : lw) s += (v = std::exp(v - m));
  for (auto& v : lw) v /= s;
  return lw;
}

Estimate replica_average(const WeightedReplicaMeasure& measure, const ReplicaFunction& f, int n,
                         std::uint64_t seed, std::size_t samples) {
  require(n == 1 || n == 2, "replica average: n must be 1 or 2");
  require(samples >= 1, "replica average: need at least one sample");
  const std::size_t size = measure.xi.size();
  require(size == measure.family.size(), "replica average: weight/family size mismatch");
  for (double w : measure.xi) require(w > 0.0 && std::isfinite(w), "replica average: weights must be positive");
  const GaussianSampler sampler(measure.family.covariance(measure.t));
  auto values = parallel_draws(samples, seed, [&](std::size_t, RandomStream& rng) {
    const auto x = sampler.sample(rng);
    const auto z = replica_weights(measure.xi, measure.beta, x);
    double s = 0.0;
    for (std::size_t a = 0; a < size; ++a) {
      if (n == 1) {
        s += f(a, a) * z[a];
      } else {
        for (std::size_t b = 0; b < size; ++b) s += f(a, b) * z[a] * z[b];
      }
    }
    if (!std::isfinite(s)) throw NumericalError("replica average: nonfinite f value");
    return s;
  });
  return summarize(values);
}

Truncation truncate_weights(const std::vector<double>& w, double rel_tol) {
  Truncation t;
  for (double v : w) t.total += v;
  double tail = t.total;
  std::size_t k = 0;
  while (k < w.size() && tail > rel_tol * t.total) {
    tail -= w[k];
    ++k;
  }
  // recompute the tail directly to avoid cancellation
  double exact = 0.0;
  for (std::size_t i = w.size(); i-- > k;) exact += w[i];
  t.kept = k;
  t.tail_mass = exact;
  return t;
}

}  // namespace sglab::gaussian
