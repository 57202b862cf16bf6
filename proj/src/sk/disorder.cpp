#include "sglab/sk/disorder.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "sglab/core/error.hpp"
#include "sglab/core/rng.hpp"
#include "sglab/gaussian/pivoted_cholesky.hpp"

namespace sglab::sk {

Variant parse_variant(const std::string& name) {
  if (name == "classic") return Variant::classic;
  if (name == "diagonal") return Variant::diagonal;
  if (name == "general") return Variant::general;
  throw ValidationError("unknown variant '" + name + "' (classic, diagonal, general)");
}

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::classic: return "classic";
    case Variant::diagonal: return "diagonal";
    case Variant::general: return "general";
  }
  return "?";
}

Matrix coupling_matrix(std::size_t n, std::uint64_t key) {
  Matrix j(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) j(a, b) = RandomStream::normal_at(key, (std::uint64_t{a} << 32) | b);
  return j;
}

namespace {

// K = L z. The factor depends only on (N, f) and is shared across draws.
const gaussian::CholeskyFactor& general_factor(std::size_t n, const CovarianceSeries& f) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::string>, std::unique_ptr<gaussian::CholeskyFactor>> cache;
  const auto key = std::make_pair(n, f.to_json().dump());
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[key];
  if (!slot) {
    std::vector<double> table(n + 1);  // covariance by Hamming distance
    for (std::size_t d = 0; d <= n; ++d) {
      const double q = (static_cast<double>(n) - 2.0 * d) / static_cast<double>(n);
      table[d] = 0.5 * static_cast<double>(n) * f.f(q);
    }
    const std::size_t states = std::size_t{1} << n;
    slot = std::make_unique<gaussian::CholeskyFactor>(gaussian::pivoted_cholesky(
        states, [&](std::size_t a, std::size_t b) { return table[std::popcount(a ^ b)]; }, 1e-12));
  }
  return *slot;
}

}  // namespace

DisorderSample DisorderSample::draw(std::size_t n, Variant variant, double beta, double h, std::uint64_t key,
                                    std::optional<CovarianceSeries> f) {
  if (variant == Variant::general) {
    require(f.has_value(), "general variant needs a covariance series");
    DisorderSample d = general(n, *f, beta, h);
    d.realize(key);
    return d;
  }
  require(!f || f->is_sk(), "classic and diagonal variants are SK (f = q^2)");
  return from_couplings(coupling_matrix(n, key), variant, beta, h);
}

DisorderSample DisorderSample::from_couplings(Matrix j, Variant variant, double beta, double h) {
  require(variant != Variant::general, "explicit couplings are for the classic or diagonal variant");
  require(j.rows() == j.cols() && j.rows() >= 1, "coupling matrix must be square and nonempty");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(h), "h must be finite");
  DisorderSample d;
  d.n_ = j.rows();
  d.variant_ = variant;
  d.beta_ = beta;
  d.h_ = h;
  d.j_ = std::move(j);
  return d;
}

DisorderSample DisorderSample::general(std::size_t n, CovarianceSeries f, double beta, double h) {
  require(n >= 1, "system size must be >= 1");
  require(n <= kGeneralGuard, "general-f enumeration guard: N <= " + std::to_string(kGeneralGuard));
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(h), "h must be finite");
  DisorderSample d;
  d.n_ = n;
  d.variant_ = Variant::general;
  d.beta_ = beta;
  d.h_ = h;
  d.f_ = std::move(f);
  return d;
}

void DisorderSample::realize(std::uint64_t key) {
  require(variant_ == Variant::general, "only the general variant has a realized process");
  const auto& factor = general_factor(n_, *f_);
  RandomStream rng(key);
  std::vector<double> z(factor.rank);
  for (auto& v : z) v = rng.normal();
  k_ = factor.apply(z);
}

Matrix DisorderSample::quadratic_form() const {
  require(variant_ != Variant::general, "general variant has no coupling matrix");
  Matrix b(n_, n_);
  if (variant_ == Variant::classic) {
    const double s = 1.0 / std::sqrt(static_cast<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = i + 1; k < n_; ++k) b(i, k) = b(k, i) = j_(i, k) * s;
  } else {
    const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = i + 1; k < n_; ++k) b(i, k) = b(k, i) = (j_(i, k) + j_(k, i)) * s;
  }
  return b;
}

double DisorderSample::constant() const {
  if (variant_ != Variant::diagonal) return 0.0;
  const double s = 1.0 / std::sqrt(2.0 * static_cast<double>(n_));
  double c = 0.0;
  for (std::size_t i = 0; i < n_; ++i) c += j_(i, i) * s;
  return c;
}

DisorderSample DisorderSample::with_beta(double beta) const {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  DisorderSample d = *this;
  d.beta_ = beta;
  return d;
}

double hamiltonian(const DisorderSample& d, const SpinConfig& s) {
  require(s.size() == d.size(), "hamiltonian: configuration length differs from N");
  double field = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) field += s[i];
  field *= d.h();
  if (d.variant() == Variant::general) {
    require(d.realized(), "general variant: process not realized, call realize() first");
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] < 0) bits |= std::uint64_t{1} << i;
    return -(d.process()[bits] + field);
  }
  const Matrix& j = d.couplings();
  const std::size_t n = d.size();
  double inter = 0.0;
  if (d.variant() == Variant::classic) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) inter += j(i, k) * s[i] * s[k];
    inter /= std::sqrt(static_cast<double>(n));
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) inter += j(i, k) * s[i] * s[k];
    inter /= std::sqrt(2.0 * static_cast<double>(n));
  }
  return -(inter + field);
}

}  // namespace sglab::sk
