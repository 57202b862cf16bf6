#include <cmath>

#include "doctest.h"
#include "sglab/cascade/cascade.hpp"
#include "sglab/cascade/evolution.hpp"
#include "sglab/cascade/field.hpp"
#include "sglab/cascade/overlap_law.hpp"
#include "sglab/core/error.hpp"
#include "sglab/core/stats.hpp"

using namespace sglab;
using namespace sglab::cascade;

TEST_CASE("stable moments") {
  CHECK(stable_moment(0.7, 0.3) == doctest::Approx(1.92040534043783835).epsilon(1e-13));
  CHECK(stable_moment(0.5, 0.2) == doctest::Approx(1.60820742299771674).epsilon(1e-13));
  CHECK(stable_moment(0.5, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(stable_moment(0.5, 0.6), ValidationError);
  CHECK(normalization_scale(OrderParameter({0.5}, {0.3})) == 1.0);
}

TEST_CASE("cascade structure") {
  const OrderParameter p({0.3, 0.7}, {0.2, 0.6});
  const auto c = build_cascade(p, 6, 11);
  CHECK(c.depth() == 2);
  CHECK(c.leaves() == 36);
  CHECK(c.parents() == 6);
  double total = 0.0;
  for (std::size_t a = 0; a < c.leaves(); ++a) total += c.p(a);
  for (std::size_t b = 0; b < c.parents(); ++b) total += c.dust_p(b);
  CHECK(total == doctest::Approx(1.0));
  CHECK(overlap_kernel(c, 4, 4) == 1.0);
  CHECK(overlap_kernel(c, 0, 5) == 0.6);
  CHECK(overlap_kernel(c, 0, 6) == 0.2);
  CHECK(overlap(c, {0, true}, {0, true}) == 0.6);
  CHECK(overlap(c, {0, true}, {1, false}) == 0.6);
  CHECK(overlap(c, {0, true}, {7, false}) == 0.2);
  double dust = 0.0;
  for (std::size_t b = 0; b < c.parents(); ++b) dust += c.dust_p(b);
  for (std::size_t j = 0; j <= 2; ++j) {
    double s = 0.0;
    for (double v : c.node_mass(j)) s += v;
    CHECK(s == doctest::Approx(j == 2 ? 1.0 - dust : 1.0));
  }
}

TEST_CASE("a larger m extends the same cascade") {
  const OrderParameter p({0.5}, {0.4});
  const auto small = build_cascade(p, 20, 3), big = build_cascade(p, 40, 3);
  for (std::size_t i = 0; i < 20; ++i) CHECK(small.factors[0][i] == big.factors[0][i]);
}

TEST_CASE("coincidence probability averages to 1 - x") {
  const OrderParameter p({0.5}, {0.4});
  RunningStats s;
  for (std::uint64_t key = 0; key < 3000; ++key) s.add(coincidence_by_depth(build_cascade(p, 200, key))[0]);
  CHECK(std::fabs(s.mean() - 0.5) < 3.5 * s.stderr_mean() + 0.005);
}

TEST_CASE("two-replica overlap law at small size") {
  const auto r = two_replica_overlap_law(OrderParameter({0.3, 0.7}, {0.2, 0.6}), 100, 1500, 20, 5);
  REQUIRE(r.levels.size() == 2);
  CHECK(r.target == std::vector<double>{0.3, 0.7});
  CHECK(r.exact_max_deviation < 0.03);
  CHECK(r.below_q1 == 0.0);
}

TEST_CASE("replica sampler follows the weights") {
  const auto c = build_cascade(OrderParameter({0.5}, {0.4}), 50, 8);
  RandomStream rng(1);
  const auto reps = sample_replicas(c, 20000, rng);
  double hits = 0.0;
  for (const auto& r : reps) hits += (!r.dust && r.index == 0) ? 1.0 : 0.0;
  const double p = c.p(0);
  CHECK(std::fabs(hits / 20000 - p) < 4.0 * std::sqrt(p * (1 - p) / 20000));
}

TEST_CASE("linear cole-hopf step is exact") {
  const auto step = cole_hopf_step([](double y) { return 1.5 * y; }, 0.4, 0.3);
  CHECK(step(0.7) == doctest::Approx(1.5 * 0.7 + 0.4 * 1.5 * 1.5 * 0.3 / 2).epsilon(1e-12));
  const auto plain = cole_hopf_step([](double y) { return y * y; }, 0.0, 0.3);
  CHECK(plain(0.5) == doctest::Approx(0.25 + 0.3).epsilon(1e-12));
}

TEST_CASE("hierarchical field covariance") {
  const auto c = build_cascade(OrderParameter({0.3, 0.7}, {0.2, 0.6}), 3, 2);
  RunningStats self, sib, far;
  for (std::uint64_t s = 0; s < 20000; ++s) {
    RandomStream rng(s);
    const auto f = hierarchical_field(c, 1, rng);
    self.add(f.at(0, 0) * f.at(0, 0));
    sib.add(f.at(0, 0) * f.at(0, 1));
    far.add(f.at(0, 0) * f.at(0, 4));
  }
  CHECK(std::fabs(self.mean() - 1.0) < 4 * self.stderr_mean());
  CHECK(std::fabs(sib.mean() - 0.6) < 4 * sib.stderr_mean());
  CHECK(std::fabs(far.mean() - 0.2) < 4 * far.stderr_mean());
}

TEST_CASE("psi parsing and lipschitz bounds") {
  const auto lc = Psi::parse("log-cosh:2");
  CHECK(lc.lipschitz == doctest::Approx(2.0));
  CHECK(lipschitz_on_grid(lc.f, -10, 10) <= 2.0 + 1e-9);
  CHECK(Psi::parse("linear:0.5").f(2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Psi::parse("cubic:1"), ValidationError);
}

TEST_CASE("evolved weights stay normalized") {
  const auto c = build_cascade(OrderParameter({0.3, 0.7}, {0.2, 0.6}), 10, 4);
  RandomStream rng(6);
  const auto e = evolve_cascade(c, Psi::log_cosh(1.0), rng);
  double s = 0.0;
  for (double v : e.leaves) s += v;
  for (double v : e.dust) s += v;
  CHECK(s == doctest::Approx(1.0));
  const auto top = top_weights(e.leaves, 3);
  CHECK(top.size() == 3);
  CHECK(top[0] >= top[1]);
}

TEST_CASE("cascade quasi-stationarity and its negative control") {
  const OrderParameter p({0.5}, {0.4});
  CHECK(cascade_quasi_stationarity(p, 100, Psi::log_cosh(1.0), 5, 600, 3).pass);
  CHECK_FALSE(cascade_quasi_stationarity(p, 100, Psi::log_cosh(1.0), 5, 600, 3, 1.0, OrderParameter({0.8}, {0.4})).pass);
}
