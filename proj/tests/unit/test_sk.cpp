#include <cmath>

#include "doctest.h"
#include "sglab/core/error.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/sk/disorder.hpp"
#include "sglab/sk/experiments.hpp"
#include "sglab/sk/ground_state.hpp"
#include "sglab/sk/jacobi.hpp"
#include "sglab/sk/partition.hpp"

using namespace sglab;
using namespace sglab::sk;

namespace {

double brute_log_z(const DisorderSample& d) {
  LogSumExp acc;
  for (std::uint64_t b = 0; b < (1ull << d.size()); ++b)
    acc.add(-d.beta() * hamiltonian(d, SpinConfig::from_bits(b, d.size())));
  return acc.value();
}

}  // namespace

TEST_CASE("classic hamiltonian by hand") {
  Matrix j(3, 3);
  j(0, 1) = 1.0;
  j(0, 2) = -2.0;
  j(1, 2) = 0.5;
  const auto d = DisorderSample::from_couplings(j, Variant::classic, 1.0, 0.25);
  const SpinConfig s({1, -1, 1});
  // -H = (J01 s0 s1 + J02 s0 s2 + J12 s1 s2) / sqrt 3 + h sum s
  const double minus_h = (-1.0 - 2.0 - 0.5) / std::sqrt(3.0) + 0.25;
  CHECK(hamiltonian(d, s) == doctest::Approx(-minus_h));
}

TEST_CASE("gray-code enumeration matches the direct sum") {
  for (auto v : {Variant::classic, Variant::diagonal}) {
    const auto d = DisorderSample::draw(7, v, 0.8, 0.3, 99);
    const auto g = enumerate_gibbs(d);
    CHECK(g.log_z == doctest::Approx(brute_log_z(d)).epsilon(1e-12));
    double num = 0.0, den = 0.0;
    for (std::uint64_t b = 0; b < 128; ++b) {
      const double e = hamiltonian(d, SpinConfig::from_bits(b, 7));
      const double w = std::exp(-d.beta() * e - g.log_z);
      num += w * e;
      den += w;
    }
    CHECK(den == doctest::Approx(1.0));
    CHECK(g.mean_energy == doctest::Approx(num));
  }
}

TEST_CASE("general variant with f = q^2 reproduces the diagonal law of ln Z") {
  const ModelSpec gen{6, 1.0, 0.0, Variant::general, CovarianceSeries::sk()};
  const ModelSpec diag{6, 1.0, 0.0, Variant::diagonal, std::nullopt};
  const auto a = quenched_pressure(gen, 1500, 2), b = quenched_pressure(diag, 1500, 3);
  CHECK(std::fabs(a.mean - b.mean) < 3.5 * std::hypot(a.se, b.se));
}

TEST_CASE("couplings nest across system sizes") {
  const auto small = coupling_matrix(4, 17), big = coupling_matrix(9, 17);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(small(i, j) == big(i, j));
}

TEST_CASE("zero temperature limit of the pressure is ln 2") {
  const auto e = quenched_pressure({10, 0.0, 0.0, Variant::classic, std::nullopt}, 20, 1);
  CHECK(e.mean == std::log(2.0));
  CHECK(e.se == 0.0);
  CHECK_THROWS_AS(quenched_pressure({25, 1.0, 0.0, Variant::classic, std::nullopt}, 2, 1), ValidationError);
}

TEST_CASE("superadditivity gap vanishes at beta = 0") {
  const auto r = superadditivity_experiment(4, 4, 0.0, 0.0, 50, 1);
  CHECK(r.gap == 0.0);
}

TEST_CASE("superadditivity gap by interpolation is nonnegative") {
  const auto g = superadditivity_gap_by_interpolation(3, 3, 1.0, 0.0, 6, 4000, 5);
  CHECK(g.mean > -3.0 * g.se);
}

TEST_CASE("jacobi eigenvalues of a known matrix") {
  Matrix a(3, 3);
  const double v[3][3] = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = v[i][j];
  const auto e = jacobi_eigen(a);
  CHECK(e.values[0] == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(2.0 + std::sqrt(2.0)));
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < 3; ++j) av += a(i, j) * e.vectors(k, j);
      CHECK(av == doctest::Approx(e.values[k] * e.vectors(k, i)).epsilon(1e-9));
    }
}

TEST_CASE("jacobi on a random symmetric matrix keeps the trace") {
  const auto d = DisorderSample::draw(40, Variant::classic, 1.0, 0.0, 4);
  const auto m = energy_matrix(d);
  const auto e = jacobi_eigen(m);
  double tr = 0.0, fro = 0.0, ev2 = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    tr += m(i, i);
    for (std::size_t j = 0; j < 40; ++j) fro += m(i, j) * m(i, j);
  }
  double s = 0.0;
  for (double v : e.values) {
    s += v;
    ev2 += v * v;
  }
  CHECK(s == doctest::Approx(tr).epsilon(1e-9));
  CHECK(ev2 == doctest::Approx(fro).epsilon(1e-9));
  for (std::size_t i = 1; i < 40; ++i) CHECK(e.values[i] >= e.values[i - 1]);
}

TEST_CASE("heuristic ground states are above the exact one") {
  const auto d = DisorderSample::draw(12, Variant::classic, 1.0, 0.0, 21);
  double best = INFINITY;
  for (std::uint64_t b = 0; b < 4096; ++b) best = std::min(best, hamiltonian(d, SpinConfig::from_bits(b, 12)));
  const auto g = greedy_ground_state(d), s = spectral_ground_state(d);
  CHECK(g.energy_per_spin >= best / 12 - 1e-12);
  CHECK(s.energy_per_spin >= best / 12 - 1e-12);
  CHECK(g.energy_per_spin == doctest::Approx(hamiltonian(d, g.spins) / 12));
  // s^T E s with E = -B/2 reproduces H at h = 0
  const auto e = energy_matrix(d);
  double q = 0.0;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) q += s.spins[i] * e(i, j) * s.spins[j];
  CHECK(q == doctest::Approx(hamiltonian(d, s.spins)));
}

TEST_CASE("greedy study at moderate size") {
  const auto r = ground_state_study(GroundStateAlgo::greedy, 200, 20, 3);
  CHECK(r.per_draw.size() == 20);
  CHECK(r.energy.mean < -0.45);
  CHECK(r.energy.mean > -0.62);
}

TEST_CASE("incremental samples are the pressure difference") {
  const auto inc = incremental_pressure(6, 2, 1.0, 0.0, Variant::diagonal, 200, 8);
  CHECK(inc.count == 200);
  CHECK(std::isfinite(inc.mean));
  const auto per = incremental_samples(6, 2, 1.0, 0.0, Variant::diagonal, 200, 8);
  CHECK(summarize(per).mean == doctest::Approx(inc.mean));
}
