#include "sglab/rost/cavity.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/cascade/field.hpp"
#include "sglab/core/error.hpp"
#include "sglab/gaussian/pivoted_cholesky.hpp"

namespace sglab::rost {

namespace {

CavityFields ultrametric_fields(const RostSample& rost, std::size_t m, const CovarianceSeries& f,
                                RandomStream& rng) {
  const cascade::Cascade& c = *rost.cascade();
  RandomStream eta_rng = rng.split(0), kappa_rng = rng.split(1);
  const auto eta = cascade::hierarchical_field(c, m, eta_rng, 1.0, cascade::cavity_profile(f));
  const auto kappa = cascade::hierarchical_field(c, 1, kappa_rng, 1.0, cascade::fugacity_profile(f));
  const std::size_t n = rost.size();
  CavityFields out;
  out.spins = m;
  out.states.resize(n);
  out.kappa.resize(n);
  out.eta.resize(m * n);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t leaf = rost.leaf(s);
    out.states[s] = s;
    out.kappa[s] = kappa.at(0, leaf);
    for (std::size_t i = 0; i < m; ++i) out.eta[i * n + s] = eta.at(i, leaf);
  }
  out.dust_weight = c.dust;
  out.dust_kappa = kappa.parent;
  out.dust_eta = eta.parent;
  out.dust_kappa_variance = kappa.leaf_variance;
  out.dust_eta_variance = eta.leaf_variance;
  return out;
}

// SK covariances on spin states: eta = R z, kappa = r^T Z r / sqrt 2.
CavityFields gram_sk_fields(const RostSample& rost, std::size_t m, RandomStream& rng) {
  const Matrix& r = rost.features();
  const std::size_t n = rost.size(), d = r.cols();
  CavityFields out;
  out.spins = m;
  out.states.resize(n);
  for (std::size_t s = 0; s < n; ++s) out.states[s] = s;
  out.eta.assign(m * n, 0.0);
  std::vector<double> z(d);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& v : z) v = rng.normal();
    for (std::size_t s = 0; s < n; ++s) {
      const double* row = r.row(s);
      double acc = 0.0;
      for (std::size_t j = 0; j < d; ++j) acc += row[j] * z[j];
      out.eta[i * n + s] = acc;
    }
  }
  Matrix big_z(d, d);
  for (auto& v : big_z.data()) v = rng.normal();
  out.kappa.resize(n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t s = 0; s < n; ++s) {
    const double* row = r.row(s);
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double* zj = big_z.row(j);
      double inner = 0.0;
      for (std::size_t l = 0; l < d; ++l) inner += zj[l] * row[l];
      acc += row[j] * inner;
    }
    out.kappa[s] = acc * inv_sqrt2;
  }
  return out;
}

CavityFields factored_fields(const RostSample& rost, std::size_t m, const CovarianceSeries& f, RandomStream& rng) {
  const auto& w = rost.weights();
  double total = 0.0;
  for (double v : w) total += v;
  std::size_t kept = 0;
  double tail = total;
  while (kept < w.size() && kept < kStateGuard && tail > kTailTolerance * total) tail -= w[kept++];
  if (kept == 0) kept = 1;
  CavityFields out;
  out.spins = m;
  out.tail_mass = std::max(tail, 0.0) / total;
  out.states.resize(kept);
  for (std::size_t s = 0; s < kept; ++s) out.states[s] = s;
  std::vector<double> q(kept * kept);
  for (std::size_t a = 0; a < kept; ++a)
    for (std::size_t b = 0; b <= a; ++b) q[a * kept + b] = q[b * kept + a] = rost.overlap(a, b);
  auto factor = [&](auto cov) {
    try {
      return gaussian::pivoted_cholesky(kept, [&](std::size_t a, std::size_t b) { return cov(q[a * kept + b]); });
    } catch (const NumericalError&) {
      throw ValidationError("cavity field covariance is not positive semidefinite; the ROSt is invalid");
    }
  };
  const auto lk = factor([&](double v) { return 0.5 * f.phi(v); });
  const auto le = factor([&](double v) { return 0.5 * f.fprime(v); });
  std::vector<double> z(lk.rank);
  for (auto& v : z) v = rng.normal();
  out.kappa = lk.apply(z);
  out.eta.resize(m * kept);
  z.resize(le.rank);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto& v : z) v = rng.normal();
    le.apply(z.data(), out.eta.data() + i * kept);
  }
  return out;
}

Matrix field_covariance(const RostSample& rost, std::size_t n, const std::function<double(double)>& g) {
  const Matrix q = rost.overlap_matrix(n);
  Matrix c(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) c(a, b) = g(q(a, b));
  return c;
}

}  // namespace

CavityFields cavity_fields(const RostSample& rost, std::size_t m, const CovarianceSeries& f, RandomStream& rng) {
  require(m >= 1, "need at least one added spin");
  switch (rost.kernel()) {
    case RostSample::Kernel::ultrametric: return ultrametric_fields(rost, m, f, rng);
    case RostSample::Kernel::gram:
      if (f.is_sk()) return gram_sk_fields(rost, m, rng);
      return factored_fields(rost, m, f, rng);
    case RostSample::Kernel::dense: return factored_fields(rost, m, f, rng);
  }
  return {};
}

Matrix kappa_covariance(const RostSample& rost, std::size_t n, const CovarianceSeries& f) {
  return field_covariance(rost, n, [&](double q) { return 0.5 * f.phi(q); });
}

Matrix eta_covariance(const RostSample& rost, std::size_t n, const CovarianceSeries& f) {
  return field_covariance(rost, n, [&](double q) { return 0.5 * f.fprime(q); });
}

}  // namespace sglab::rost
