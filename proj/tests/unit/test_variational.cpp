#include <cmath>

#include "doctest.h"
#include "sglab/core/error.hpp"
#include "sglab/parisi/solver.hpp"
#include "sglab/variational/nelder_mead.hpp"
#include "sglab/variational/optimize.hpp"

using namespace sglab;
using namespace sglab::variational;

TEST_CASE("encoding round trip") {
  const std::vector<double> x{0.2, 0.55, 0.9}, q{0.1, 0.3, 0.75};
  const auto p = decode(encode(x, q), 3);
  REQUIRE(p.k() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(p.x()[i] == doctest::Approx(x[i]).epsilon(1e-12));
    CHECK(p.q()[i] == doctest::Approx(q[i]).epsilon(1e-12));
  }
  CHECK(decode({}, 0).is_annealed());
  // extreme logits still decode to a valid parameter
  CHECK_NOTHROW(decode({40.0, -40.0, 40.0, 40.0}, 2));
}

TEST_CASE("nelder-mead on rosenbrock") {
  auto f = [](const std::vector<double>& v) {
    return 100.0 * std::pow(v[1] - v[0] * v[0], 2) + std::pow(1.0 - v[0], 2);
  };
  NelderMeadOptions o;
  o.tolerance = 1e-10;
  o.max_iterations = 10000;
  const auto r = nelder_mead(f, {-1.2, 1.0}, o);
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
}

TEST_CASE("nelder-mead treats nonfinite values as walls") {
  auto f = [](const std::vector<double>& v) { return v[0] < 0.0 ? NAN : (v[0] - 1.0) * (v[0] - 1.0); };
  const auto r = nelder_mead(f, {3.0});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("replica symmetric fixed points") {
  CHECK(std::fabs(rs_stationary_point(2.0, 0.0) - 0.530368392050794633) < 1e-8);
  CHECK(std::fabs(rs_stationary_point(0.5, 0.3) - 0.028614166757625470) < 1e-8);
  CHECK(std::fabs(rs_stationary_point(1.5, 0.5) - 0.500083742596424208) < 1e-8);
  CHECK(rs_stationary_point(0.8, 0.0) == 0.0);
  CHECK(std::fabs(rs_residual(0.530368392050794633, 2.0, 0.0)) < 1e-12);
}

TEST_CASE("the library agrees with the grid oracle at a grid point") {
  const auto v = parisi::parisi_functional(OrderParameter({0.9975}, {0.5275}), 2.0, 0.0);
  CHECK(std::fabs(v.value - 1.5848619847521164) < 1e-8);
}

TEST_CASE("one-step optimum against a 200 x 200 grid search") {
  OptimizeOptions o;
  o.restarts = 3;
  const auto a = optimize(1, 2.0, 0.0, 1, o);
  CHECK(a.value <= 1.5848619847521164 + 1e-9);
  CHECK(1.5848619847521164 - a.value < 2e-4);
  // the one-step family reaches the replica symmetric value in the x -> 1 limit
  const double q = rs_stationary_point(2.0, 0.0);
  CHECK(a.value == doctest::Approx(parisi::parisi_functional(OrderParameter::replica_symmetric(q), 2.0, 0.0).value)
                       .epsilon(1e-7));
  const auto b = optimize(1, 1.5, 0.3, 1, o);
  CHECK(b.value <= 1.3020064414633659 + 1e-9);
  CHECK(1.3020064414633659 - b.value < 2e-4);
}

TEST_CASE("high temperature optimum is annealed") {
  OptimizeOptions o;
  o.restarts = 2;
  const auto r = optimize(1, 0.5, 0.0, 3, o);
  CHECK(r.value == doctest::Approx(std::log(2.0) + 0.0625).epsilon(1e-8));
  CHECK(r.from_smaller_k);
}

TEST_CASE("two steps beat one at low temperature") {
  const auto r = optimize(2, 2.0, 0.0, 5);
  REQUIRE(r.per_k.size() == 3);
  CHECK(r.per_k[1] <= r.per_k[0]);
  CHECK(r.per_k[2] <= r.per_k[1]);
  CHECK(r.per_k[1] - r.per_k[2] > 1e-4);
  CHECK(r.params.k() == 2);
  CHECK_FALSE(r.stagnated);
  const auto j = r.to_json();
  CHECK(j.at("per_k").size() == 3);
  CHECK_THROWS_AS(optimize(4, 2.0, 0.0, 5), ValidationError);
}
