#include <cmath>

#include "doctest.h"
#include "sglab/core/error.hpp"
#include "sglab/parisi/solver.hpp"
#include "sglab/rost/cavity.hpp"
#include "sglab/rost/functional.hpp"
#include "sglab/rost/guerra.hpp"
#include "sglab/rost/rost_sample.hpp"

using namespace sglab;
using namespace sglab::rost;

namespace {

Matrix sym3(double a, double b, double c) {
  Matrix m = Matrix::identity(3);
  m(0, 1) = m(1, 0) = a;
  m(0, 2) = m(2, 0) = b;
  m(1, 2) = m(2, 1) = c;
  return m;
}

}  // namespace

TEST_CASE("validation of custom ROSts") {
  CHECK_NOTHROW(RostSample::custom({0.5, 0.3, 0.2}, sym3(0.2, 0.2, 0.5)).validate());
  CHECK_THROWS_AS(RostSample::custom({0.5, 0.3, 0.2}, sym3(0.9, -0.9, 0.9)).validate(), ValidationError);
  CHECK_THROWS_AS(RostSample::custom({0.5, -0.3, 0.2}, sym3(0.2, 0.2, 0.5)).validate(), ValidationError);
  Matrix bad = sym3(0.2, 0.2, 0.5);
  bad(1, 1) = 0.9;
  CHECK_THROWS_AS(RostSample::custom({0.5, 0.3, 0.2}, bad).validate(), ValidationError);
  CHECK_THROWS_AS(RostSample::custom({0.5, 0.3, 0.2}, sym3(1.2, 0.2, 0.5)).validate(), ValidationError);
}

TEST_CASE("custom ROSts are stored by descending weight") {
  const auto r = RostSample::custom({0.2, 0.3, 0.5}, sym3(0.1, 0.2, 0.4));
  CHECK(r.weights() == std::vector<double>{0.5, 0.3, 0.2});
  // states 2 and 1 had overlap 0.4 and are now first and second
  CHECK(r.overlap(0, 1) == doctest::Approx(0.4));
  RandomStream rng(1);
  const auto f = cavity_fields(r, 2, CovarianceSeries::sk(), rng);
  CHECK(f.states.size() == 3);
  CHECK(f.eta.size() == 6);
}

TEST_CASE("gibbs ROSts are valid") {
  const auto d = sk::DisorderSample::draw(6, sk::Variant::diagonal, 1.0, 0.2, 3);
  const auto r = rost_from_sk_gibbs(d);
  CHECK(r.size() == 64);
  CHECK_NOTHROW(r.validate());
  CHECK(r.overlap(5, 5) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rost_from_sk_gibbs(sk::DisorderSample::draw(17, sk::Variant::diagonal, 1.0, 0.0, 3)),
                  ValidationError);
}

TEST_CASE("field covariances for SK") {
  const auto d = sk::DisorderSample::draw(5, sk::Variant::diagonal, 0.7, 0.0, 2);
  const auto r = rost_from_sk_gibbs(d);
  const auto q = r.overlap_matrix(8);
  const auto k = kappa_covariance(r, 8, CovarianceSeries::sk());
  const auto e = eta_covariance(r, 8, CovarianceSeries::sk());
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) {
      CHECK(k(a, b) == doctest::Approx(q(a, b) * q(a, b) / 2));
      CHECK(e(a, b) == doctest::Approx(q(a, b)));
    }
}

TEST_CASE("single state: G1 is a Gaussian average and G2 has mean zero") {
  const auto src = fixed_source(RostSample::custom({1.0}, Matrix::identity(1)));
  const auto g = g_functional_estimate(src, 4, 1.0, 0.0, CovarianceSeries::sk(), 4000, 7);
  CHECK(std::fabs(g.g1 - (std::log(2.0) + 0.374567207491437974)) < 3.0 * g.g1_se);
  CHECK(std::fabs(g.g2) < 3.0 * g.g2_se);
}

TEST_CASE("cascade G matches the Parisi functional") {
  const OrderParameter p({0.5}, {0.4});
  const auto g = g_functional_estimate(cascade_source(p, 100), 4, 1.0, 0.0, CovarianceSeries::sk(), 600, 5);
  const auto v = parisi::parisi_functional(p, 1.0, 0.0);
  CHECK(std::fabs(g.g1 - (std::log(2.0) + v.f00)) < 3.5 * g.g1_se);
  CHECK(std::fabs(g.g2 - v.correction) < 3.5 * g.g2_se);
}

TEST_CASE("estimates are reproducible") {
  const auto src = cascade_source(OrderParameter({0.5}, {0.4}), 30);
  const auto a = g_functional_estimate(src, 2, 1.0, 0.1, CovarianceSeries::sk(), 50, 9);
  const auto b = g_functional_estimate(src, 2, 1.0, 0.1, CovarianceSeries::sk(), 50, 9);
  CHECK(a.g == b.g);
  CHECK(a.se == b.se);
}

TEST_CASE("integrability bounds") {
  const auto src = cascade_source(OrderParameter({0.3, 0.7}, {0.2, 0.6}), 40);
  CHECK(integrability_bounds_check(src, 3, 1.0, 0.2, CovarianceSeries::sk(), 200, 4).holds);
  const auto zero = integrability_bounds_check(src, 3, 0.0, 0.0, CovarianceSeries::sk(), 20, 4);
  CHECK(zero.kappa_term.mean == 0.0);
  CHECK(zero.kappa_bound == 0.0);
  CHECK(zero.v_term.mean == doctest::Approx(3 * std::log(2.0)));
  CHECK(zero.holds);
}

TEST_CASE("guerra gap") {
  const auto hot = guerra_gap(8, OrderParameter::annealed(), 0.0, 0.0, 50, 1);
  CHECK(hot.gap == 0.0);
  const auto r = guerra_gap(8, OrderParameter::replica_symmetric(0.3), 1.2, 0.2, 400, 2);
  CHECK(r.holds);
  CHECK(r.se > 0.0);
}

TEST_CASE("saturation probe is finite and paired") {
  const auto r = saturation_probe(8, 2, 1.0, 0.0, 40, 3);
  CHECK(std::isfinite(r.difference));
  CHECK(r.difference == doctest::Approx(r.g.g - r.incremental.mean));
  CHECK_THROWS_AS(saturation_probe(4, 2, 1.0, 0.0, 40, 3), ValidationError);
}
