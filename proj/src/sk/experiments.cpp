#include "sglab/sk/experiments.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/gaussian/differentiation.hpp"
#include "sglab/sk/ground_state.hpp"
#include "sglab/sk/partition.hpp"

namespace sglab::sk {

namespace {

void check_spec(const ModelSpec& spec) {
  require(spec.n >= 1, "system size must be >= 1");
  require(std::isfinite(spec.beta) && spec.beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(spec.h), "h must be finite");
  if (spec.variant == Variant::general)
    require(spec.n <= kGeneralGuard, "general-f enumeration guard: N <= " + std::to_string(kGeneralGuard));
  else
    require(spec.n <= kEnumerationGuard, "enumeration guard: N <= " + std::to_string(kEnumerationGuard));
}

DisorderSample draw_for(const ModelSpec& spec, std::uint64_t key) {
  return DisorderSample::draw(spec.n, spec.variant, spec.beta, spec.h, key, spec.f);
}

// ln Z for n_disorder draws of size n, draw d keyed by derive_seed(seed, d)
std::vector<double> log_z_samples(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed) {
  check_spec(spec);
  return parallel_map(n_disorder, [&](std::size_t d) {
    return exact_log_partition(draw_for(spec, derive_seed(seed, d)));
  });
}

}  // namespace

std::vector<double> pressure_samples(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed) {
  auto v = log_z_samples(spec, n_disorder, seed);
  for (double& x : v) x /= static_cast<double>(spec.n);
  return v;
}

Estimate quenched_pressure(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed) {
  require(n_disorder >= 1, "need at least one disorder draw");
  check_spec(spec);
  if (spec.beta == 0.0) return {std::numbers::ln2, 0.0, n_disorder};
  return summarize(pressure_samples(spec, n_disorder, seed));
}

Estimate quenched_energy(const ModelSpec& spec, std::size_t n_disorder, std::uint64_t seed) {
  check_spec(spec);
  auto v = parallel_map(n_disorder, [&](std::size_t d) {
    return enumerate_gibbs(draw_for(spec, derive_seed(seed, d))).mean_energy / static_cast<double>(spec.n);
  });
  return summarize(v);
}

SuperadditivityResult superadditivity_experiment(std::size_t n, std::size_t m, double beta, double h,
                                                 std::size_t n_disorder, std::uint64_t seed) {
  require(n >= 1 && m >= 1, "superadditivity: N and M must be >= 1");
  require(n + m <= kEnumerationGuard, "superadditivity: N + M above the enumeration guard");
  require(n_disorder >= 2, "superadditivity: need at least two draws");
  auto q = [&](std::size_t size, std::uint64_t s) {
    if (beta == 0.0) return Estimate{static_cast<double>(size) * std::numbers::ln2, 0.0, n_disorder};
    return summarize(log_z_samples({size, beta, h, Variant::diagonal, std::nullopt}, n_disorder, s));
  };
  const Estimate qn = q(n, derive_seed(seed, 0));
  const Estimate qm = q(m, derive_seed(seed, 1));
  const Estimate qnm = q(n + m, derive_seed(seed, 2));
  SuperadditivityResult r;
  r.sum = {qn.mean + qm.mean, std::sqrt(qn.se * qn.se + qm.se * qm.se), n_disorder};
  r.joint = qnm;
  r.gap = qnm.mean - r.sum.mean;
  r.se = std::sqrt(qnm.se * qnm.se + r.sum.se * r.sum.se);
  if (beta == 0.0) {
    // exact: N ln 2 + M ln 2 = (N + M) ln 2
    r.gap = 0.0;
    r.sum.mean = r.joint.mean;
  }
  return r;
}

void interpolation_covariances(std::size_t n, std::size_t m, Matrix& c0, Matrix& c1) {
  const std::size_t total = n + m;
  require(total <= 12, "interpolation covariances: N + M <= 12");
  const std::size_t states = std::size_t{1} << total;
  const std::uint64_t low = (std::uint64_t{1} << n) - 1;
  c0 = Matrix(states, states);
  c1 = Matrix(states, states);
  const double dn = static_cast<double>(n), dm = static_cast<double>(m), dt = static_cast<double>(total);
  for (std::size_t a = 0; a < states; ++a)
    for (std::size_t b = 0; b < states; ++b) {
      const std::uint64_t x = a ^ b;
      const double qa = (dn - 2.0 * std::popcount(x & low)) / dn;
      const double qs = (dm - 2.0 * std::popcount(x & ~low)) / dm;
      const double qg = (dt - 2.0 * std::popcount(x)) / dt;
      c0(a, b) = 0.5 * dn * qa * qa + 0.5 * dm * qs * qs;
      c1(a, b) = 0.5 * dt * qg * qg;
    }
}

Estimate superadditivity_gap_by_interpolation(std::size_t n, std::size_t m, double beta, double h, int nodes,
                                              std::size_t samples, std::uint64_t seed) {
  Matrix c0, c1;
  interpolation_covariances(n, m, c0, c1);
  const std::size_t states = c0.rows();
  const std::size_t total = n + m;
  std::vector<double> xi(states);
  for (std::size_t a = 0; a < states; ++a) {
    const double mag = static_cast<double>(total) - 2.0 * std::popcount(a);
    xi[a] = std::exp(beta * h * mag);
  }
  // X = -K so that psi = ln sum xi e^{-beta X} is ln Z(t)
  return gaussian::interpolation_integral(xi, beta, gaussian::GaussianFamily::linear_path(c0, c1), 0.0, 1.0,
                                          nodes, seed, samples);
}

std::vector<double> incremental_samples(std::size_t n, std::size_t m, double beta, double h, Variant variant,
                                        std::size_t n_disorder, std::uint64_t seed) {
  require(m >= 1, "incremental pressure: M must be >= 1");
  require(variant != Variant::general, "incremental pressure: classic or diagonal variant");
  require(n + m <= kEnumerationGuard, "incremental pressure: N + M above the enumeration guard");
  return parallel_map(n_disorder, [&](std::size_t d) {
    const std::uint64_t key = derive_seed(seed, d);
    const Matrix big = coupling_matrix(n + m, key);
    const double big_log = exact_log_partition(DisorderSample::from_couplings(big, variant, beta, h));
    double small_log = 0.0;  // Z_0 = 1
    if (n > 0) {
      Matrix small(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) small(i, j) = big(i, j);
      small_log = exact_log_partition(DisorderSample::from_couplings(std::move(small), variant, beta, h));
    }
    return (big_log - small_log) / static_cast<double>(m);
  });
}

Estimate incremental_pressure(std::size_t n, std::size_t m, double beta, double h, Variant variant,
                              std::size_t n_disorder, std::uint64_t seed) {
  require(n_disorder >= 1, "need at least one disorder draw");
  if (beta == 0.0) return {std::numbers::ln2, 0.0, n_disorder};
  return summarize(incremental_samples(n, m, beta, h, variant, n_disorder, seed));
}

GroundStateStudy ground_state_study(GroundStateAlgo algo, std::size_t n, std::size_t n_disorder,
                                    std::uint64_t seed) {
  require(n >= 2, "ground-state study: N must be >= 2");
  require(n <= 4000, "ground-state study: N <= 4000");
  require(n_disorder >= 1, "ground-state study: need at least one draw");
  GroundStateStudy out;
  out.per_draw = parallel_map(n_disorder, [&](std::size_t d) {
    const auto dis = DisorderSample::from_couplings(coupling_matrix(n, derive_seed(seed, d)), Variant::classic,
                                                    1.0, 0.0);
    return algo == GroundStateAlgo::greedy ? greedy_ground_state(dis).energy_per_spin
                                           : spectral_ground_state(dis).energy_per_spin;
  });
  out.energy = summarize(out.per_draw);
  return out;
}

}  // namespace sglab::sk
