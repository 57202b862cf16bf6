#include "sglab/rost/functional.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "sglab/cascade/cascade.hpp"
#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/rost/cavity.hpp"

namespace sglab::rost {

RostSource cascade_source(const OrderParameter& params, std::size_t m, bool with_dust) {
  return [params, m, with_dust](RandomStream& rng) {
    return RostSample::ultrametric(
        std::make_shared<const cascade::Cascade>(cascade::build_cascade(params, m, rng.key(), with_dust)));
  };
}

RostSource sk_gibbs_source(const sk::ModelSpec& spec) {
  require(spec.n >= 1 && spec.n <= kGibbsGuard, "Gibbs ROSt lists 2^N states; N must be at most 16");
  return [spec](RandomStream& rng) {
    return rost_from_sk_gibbs(sk::DisorderSample::draw(spec.n, spec.variant, spec.beta, spec.h, rng.key(), spec.f));
  };
}

RostSource fixed_source(RostSample sample) {
  return [s = std::move(sample)](RandomStream&) { return s; };
}

namespace {

struct LogTerms {
  double log_total = 0.0;  // ln sum xi
  double log_v = 0.0;      // ln sum xi prod 2 cosh(beta (eta + h))
  double log_kappa = 0.0;  // ln sum xi e^{beta sqrt(M) kappa}
  double tail = 0.0;
};

double log_two_cosh(double u) { return std::numbers::ln2 + log_cosh(u); }

LogTerms log_terms(const RostSample& rost, const CavityFields& cf, std::size_t m, double beta, double h) {
  const auto& w = rost.weights();
  const double root_m = std::sqrt(static_cast<double>(m));
  LogSumExp total, v, kap;
  const std::size_t n = cf.states.size();
  for (std::size_t a = 0; a < n; ++a) {
    const double lw = std::log(w[cf.states[a]]);
    if (lw == -INFINITY) continue;
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += log_two_cosh(beta * (cf.eta_at(i, a) + h));
    total.add(lw);
    v.add(lw + acc);
    kap.add(lw + beta * root_m * cf.kappa[a]);
  }
  // unresolved dust below each leaf parent, integrated over its last increment
  const std::size_t parents = cf.dust_weight.size();
  const double v_shift = 0.5 * static_cast<double>(m) * beta * beta * cf.dust_eta_variance;
  const double k_shift = 0.5 * static_cast<double>(m) * beta * beta * cf.dust_kappa_variance;
  for (std::size_t p = 0; p < parents; ++p) {
    if (!(cf.dust_weight[p] > 0.0)) continue;
    const double lw = std::log(cf.dust_weight[p]);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += log_two_cosh(beta * (cf.dust_eta[i * parents + p] + h));
    total.add(lw);
    v.add(lw + acc + v_shift);
    kap.add(lw + beta * root_m * cf.dust_kappa[p] + k_shift);
  }
  return {total.value(), v.value(), kap.value(), cf.tail_mass};
}

void check_inputs(std::size_t m, double beta, double h, std::size_t n_outer) {
  require(m >= 1, "G-functional: M must be >= 1");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(h), "h must be finite");
  require(n_outer >= 2, "G-functional: need at least two outer samples");
}

std::vector<LogTerms> sample_terms(const RostSource& source, std::size_t m, double beta, double h,
                                   const CovarianceSeries& f, std::size_t n_outer, std::uint64_t seed) {
  return parallel_draws(n_outer, seed, [&](std::size_t, RandomStream& rng) {
    // the source sees the draw's own key so Gibbs states pair with direct
    // pressure runs on the same seed
    RandomStream source_rng(rng.key());
    const RostSample rost = source(source_rng);
    RandomStream field_rng = rng.split(1);
    const CavityFields cf = cavity_fields(rost, m, f, field_rng);
    return log_terms(rost, cf, m, beta, h);
  });
}

}  // namespace

GEstimate g_functional_estimate(const RostSource& source, std::size_t m, double beta, double h,
                                const CovarianceSeries& f, std::size_t n_outer, std::uint64_t seed) {
  check_inputs(m, beta, h, n_outer);
  const auto terms = sample_terms(source, m, beta, h, f, n_outer, seed);
  const double inv_m = 1.0 / static_cast<double>(m);
  RunningStats g1, g2, g;
  GEstimate out;
  for (const auto& t : terms) {
    const double a = (t.log_v - t.log_total) * inv_m;
    const double b = (t.log_kappa - t.log_total) * inv_m;
    g1.add(a);
    g2.add(b);
    g.add(a - b);
    out.max_tail = std::max(out.max_tail, t.tail);
  }
  out.g = g.mean();
  out.se = g.stderr_mean();
  out.g1 = g1.mean();
  out.g1_se = g1.stderr_mean();
  out.g2 = g2.mean();
  out.g2_se = g2.stderr_mean();
  out.samples = n_outer;
  if (out.max_tail > kTailTolerance)
    out.warnings.push_back("state cap reached; dropped weight up to " + format_double(out.max_tail));
  return out;
}

IntegrabilityReport integrability_bounds_check(const RostSource& source, std::size_t m, double beta, double h,
                                               const CovarianceSeries& f, std::size_t n_outer,
                                               std::uint64_t seed) {
  check_inputs(m, beta, h, n_outer);
  const auto terms = sample_terms(source, m, beta, h, f, n_outer, seed);
  RunningStats kt, vt;
  for (const auto& t : terms) {
    kt.add(std::fabs(t.log_kappa - t.log_total));
    vt.add(std::fabs(t.log_v - t.log_total));
  }
  const double mm = static_cast<double>(m);
  const double phi1 = f.phi(1.0), fp1 = f.fprime(1.0);
  IntegrabilityReport out;
  out.kappa_term = kt.estimate();
  out.v_term = vt.estimate();
  out.kappa_bound = beta * beta * mm * phi1 / 4.0 + beta * std::sqrt(2.0 * mm * phi1);
  out.v_bound = mm * (std::numbers::ln2 + log_cosh(beta * h)) + beta * beta * mm * fp1 / 4.0 +
                2.0 * beta * std::sqrt(mm * fp1 / std::numbers::pi);
  out.holds = out.kappa_term.mean <= out.kappa_bound + 3.0 * out.kappa_term.se &&
              out.v_term.mean <= out.v_bound + 3.0 * out.v_term.se;
  return out;
}

}  // namespace sglab::rost
