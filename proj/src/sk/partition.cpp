#include "sglab/sk/partition.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "sglab/core/error.hpp"

namespace sglab::sk {

namespace {

// Running sums of exp(beta e - shift) and exp(beta e - shift) * e.
struct Accumulator {
  double beta;
  double shift = -INFINITY;
  double z = 0.0;
  double ze = 0.0;

  void add(double e) {
    const double a = beta * e;
    if (a <= shift) {
      const double w = std::exp(a - shift);
      z += w;
      ze += w * e;
    } else {
      const double r = std::exp(shift - a);
      z = z * r + 1.0;
      ze = ze * r + e;
      shift = a;
    }
  }
};

GibbsSummary enumerate_quadratic(const DisorderSample& d) {
  const std::size_t n = d.size();
  const Matrix b = d.quadratic_form();
  const double c = d.constant(), h = d.h();
  // With h = 0 the global flip is a symmetry: pin the last spin to +1.
  const bool pinned = (h == 0.0 && n > 1);
  const std::size_t free = pinned ? n - 1 : n;

  std::vector<int> s(n, 1);
  std::vector<double> g(n, 0.0);
  double quad = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) g[i] += b(i, k);
    for (std::size_t k = i + 1; k < n; ++k) quad += b(i, k);
  }
  double mag = static_cast<double>(n);

  Accumulator acc{d.beta()};
  acc.add(c + quad + h * mag);
  const std::uint64_t total = std::uint64_t{1} << free;
  for (std::uint64_t t = 1; t < total; ++t) {
    const int k = std::countr_zero(t);
    const double sk = s[k];
    quad -= 2.0 * sk * g[k];
    mag -= 2.0 * sk;
    s[k] = -s[k];
    const double* bk = b.row(k);
    const double f = -2.0 * sk;
    for (std::size_t i = 0; i < n; ++i) g[i] += f * bk[i];
    acc.add(c + quad + h * mag);
  }
  GibbsSummary out;
  out.log_z = acc.shift + std::log(acc.z) + (pinned ? std::numbers::ln2 : 0.0);
  out.mean_energy = -acc.ze / acc.z;
  return out;
}

GibbsSummary enumerate_general(const DisorderSample& d) {
  require(d.realized(), "general variant: process not realized");
  const std::size_t n = d.size();
  const auto& k = d.process();
  Accumulator acc{d.beta()};
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    const double mag = static_cast<double>(n) - 2.0 * std::popcount(bits);
    acc.add(k[bits] + d.h() * mag);
  }
  return {acc.shift + std::log(acc.z), -acc.ze / acc.z};
}

}  // namespace

GibbsSummary enumerate_gibbs(const DisorderSample& d) {
  const std::size_t n = d.size();
  if (d.variant() == Variant::general) {
    require(n <= kGeneralGuard, "general-f enumeration guard: N <= " + std::to_string(kGeneralGuard));
  } else {
    require(n <= kEnumerationGuard, "enumeration guard: N <= " + std::to_string(kEnumerationGuard));
  }
  GibbsSummary out = d.variant() == Variant::general ? enumerate_general(d) : enumerate_quadratic(d);
  if (d.beta() == 0.0) out.log_z = static_cast<double>(n) * std::numbers::ln2;
  if (!std::isfinite(out.log_z) || !std::isfinite(out.mean_energy))
    throw NumericalError("partition function is not finite");
  return out;
}

double exact_log_partition(const DisorderSample& d) { return enumerate_gibbs(d).log_z; }

}  // namespace sglab::sk
