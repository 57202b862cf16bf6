#include <cmath>

#include "doctest.h"
#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/rem/increment_law.hpp"
#include "sglab/rem/point_process.hpp"
#include "sglab/rem/quasi_stationarity.hpp"

using namespace sglab;
using namespace sglab::rem;

TEST_CASE("points are descending and above epsilon") {
  RandomStream r(1);
  const auto c = sample_rem(0.5, 1e-3, r);
  REQUIRE_FALSE(c.points.empty());
  for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i] < c.points[i - 1]);
  CHECK(c.points.back() > 1e-3);
  RandomStream t(2);
  const auto top = sample_rem_top(0.5, 10, t);
  CHECK(top.points.size() == 10);
  CHECK(top.epsilon < top.points.back());
  CHECK_THROWS_AS(sample_rem(1.2, 0.1, r), ValidationError);
}

TEST_CASE("occupation number has mean eps^-x") {
  const double x = 0.6, eps = 0.01;
  const auto counts = parallel_draws(4000, 5, [&](std::size_t, RandomStream& r) {
    return static_cast<double>(sample_rem(x, eps, r).points.size());
  });
  const auto e = summarize(counts);
  CHECK(std::fabs(e.mean - std::pow(eps, -x)) < 3.5 * e.se);
}

TEST_CASE("normalized weights have E sum p^2 = 1 - x") {
  const double x = 0.4;
  const auto v = parallel_draws(4000, 6, [&](std::size_t, RandomStream& r) {
    const auto c = sample_rem(x, 1e-7, r);
    const auto z = partition_sum(c).z;
    double s = 0.0;
    for (double p : c.points) s += (p / z) * (p / z);
    return s;
  });
  const auto e = summarize(v);
  CHECK(std::fabs(e.mean - (1.0 - x)) < 3.5 * e.se + 1e-3);
}

TEST_CASE("truncated tail mean") {
  CHECK(truncated_tail_mean(0.5, 0.04) == doctest::Approx(0.5 * 0.2 / 0.5));
  RandomStream r(3);
  const auto c = sample_rem(0.5, 0.04, r);
  CHECK(partition_sum(c).tail_bound == doctest::Approx(truncated_tail_mean(0.5, 0.04)));
}

TEST_CASE("order statistics scale like n^{-1/x}") {
  const auto r = order_statistic_law_check(0.5, 1e-4, 5, 4000, 9);
  REQUIRE(r.scaled_mean.size() == 5);
  // E xi_1^{-x} = E Gamma_1 = 1
  CHECK(std::fabs(r.inverse_power_mean - 1.0) < 3.5 * r.inverse_power_se);
}

TEST_CASE("increment law moments") {
  const auto ln = IncrementLaw::lognormal(0.5);
  CHECK(ln.moment(0.4) == doctest::Approx(std::exp(0.4 * 0.4 * 0.25 / 2)));
  CHECK(ln.correction(0.4) == doctest::Approx(std::exp(0.4 * 0.25 / 2)));
  const auto tp = IncrementLaw::two_point(2.0, 0.5, 0.5);
  CHECK(tp.moment(0.5) == doctest::Approx(0.5 * std::sqrt(2.0) + 0.5 * std::sqrt(0.5)));
  const auto tilt = tp.tilted(0.5);
  CHECK(tilt.p() == doctest::Approx(std::sqrt(2.0) / (std::sqrt(2.0) + std::sqrt(0.5))));
  CHECK(IncrementLaw::point_mass(3.0).correction(0.3) == doctest::Approx(3.0));
  // tilting a lognormal shifts its mean by x s^2
  const auto lt = ln.tilted(0.4);
  CHECK(lt.cdf(std::exp(0.4 * 0.25)) == doctest::Approx(0.5));
  CHECK(IncrementLaw::parse("two-point:2:0.5:0.5").to_string() == tp.to_string());
  CHECK_THROWS_AS(IncrementLaw::parse("gamma:1"), ValidationError);
  CHECK_THROWS_AS(IncrementLaw::two_point(-1.0, 1.0), ValidationError);
}

TEST_CASE("evolution keeps the configuration sorted") {
  RandomStream a(4), b(5);
  const auto c = sample_rem(0.5, 0.01, a);
  const auto e = evolve(c, IncrementLaw::lognormal(0.5), b);
  CHECK(e.config.points.size() == c.points.size());
  for (std::size_t i = 1; i < e.config.points.size(); ++i) CHECK(e.config.points[i] <= e.config.points[i - 1]);
}

TEST_CASE("quasi-stationarity with and without the correction") {
  const auto g = IncrementLaw::lognormal(1.0);
  CHECK(quasi_stationarity_test(0.5, g, 1e-6, 5, 800, 2, QsForm::corrected).pass);
  CHECK(quasi_stationarity_test(0.5, g, 1e-6, 5, 800, 2, QsForm::normalized).pass);
  CHECK_FALSE(quasi_stationarity_test(0.5, g, 1e-6, 5, 800, 2, QsForm::uncorrected).pass);
}

TEST_CASE("tilted increments on a two-point law") {
  const auto r = tilted_increment_test(0.5, IncrementLaw::two_point(2.0, 0.5, 0.5), 1e-6, 10, 1000, 3);
  CHECK(std::fabs(r.frequency_a - r.expected_frequency_a) <= 0.02);
  CHECK(r.pass);
}
