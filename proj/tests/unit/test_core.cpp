#include <cmath>
#include <set>

#include "doctest.h"
#include "sglab/core/covariance_series.hpp"
#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/ks_test.hpp"
#include "sglab/core/order_parameter.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/rng.hpp"
#include "sglab/core/spin.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/core/superadditive.hpp"

using namespace sglab;

TEST_CASE("philox known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of the key") {
  RandomStream a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto va = a(), vb = b();
    CHECK(va == vb);
    CHECK(va != c());
  }
  CHECK(RandomStream(5).split(3).key() == derive_seed(5, 3));
  CHECK(derive_seed(1, 2) != derive_seed(2, 1));
}

TEST_CASE("uniform and normal moments") {
  RandomStream r(7);
  RunningStats u, z, z2, e;
  for (int i = 0; i < 200000; ++i) {
    const double v = r.uniform();
    CHECK_UNARY(v > 0.0);
    CHECK_UNARY(v < 1.0);
    u.add(v);
    const double n = r.normal();
    z.add(n);
    z2.add(n * n);
    e.add(r.exponential());
  }
  CHECK(std::fabs(u.mean() - 0.5) < 4 * u.stderr_mean());
  CHECK(std::fabs(z.mean()) < 4 * z.stderr_mean());
  CHECK(std::fabs(z2.mean() - 1.0) < 4 * z2.stderr_mean());
  CHECK(std::fabs(e.mean() - 1.0) < 4 * e.stderr_mean());
}

TEST_CASE("parallel draws do not depend on the thread count") {
  auto draw = [](std::size_t, RandomStream& r) { return r.normal(); };
  set_thread_count(1);
  const auto one = parallel_draws(1000, 9, draw);
  set_thread_count(4);
  const auto four = parallel_draws(1000, 9, draw);
  set_thread_count(0);
  CHECK(one == four);
}

TEST_CASE("fnv1a and number formatting") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
  CHECK(hex64(0xabcull) == "0000000000000abc");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0})
    CHECK(parse_double(format_double(v)) == v);
  CHECK_THROWS_AS(parse_double("1.5x"), ValidationError);
  CHECK_THROWS_AS(parse_double("nan"), ValidationError);
}

TEST_CASE("kolmogorov distribution") {
  CHECK(kolmogorov_q(1.0) == doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_q(1.5) == doctest::Approx(0.022217962616525127).epsilon(1e-12));
  CHECK(kolmogorov_q(0.0) == 1.0);
}

TEST_CASE("two-sample KS") {
  const auto r = ks_two_sample({0.1, 0.4, 0.7, 1.3, 2.2, 2.9}, {0.2, 0.25, 1.1, 1.9, 3.5, 3.6, 4.0});
  CHECK(r.statistic == doctest::Approx(0.42857142857142855).epsilon(1e-14));
  CHECK(r.p_value == doctest::Approx(0.4683850215447533).epsilon(1e-10));
  CHECK(bonferroni({0.2, 0.03, 0.5}) == doctest::Approx(0.09));
  CHECK(bonferroni({0.9, 0.8}) == 1.0);
}

TEST_CASE("one-sample KS accepts the true law and rejects a shifted one") {
  RandomStream r(3);
  std::vector<double> s(5000);
  for (auto& v : s) v = r.uniform();
  CHECK(ks_one_sample(s, [](double v) { return std::clamp(v, 0.0, 1.0); }).p_value > 0.01);
  CHECK(ks_one_sample(s, [](double v) { return std::clamp(v - 0.1, 0.0, 1.0); }).p_value < 1e-6);
}

TEST_CASE("order parameter") {
  const OrderParameter p({0.3, 0.7}, {0.2, 0.6});
  CHECK(p.k() == 2);
  CHECK(p.eval(0.1) == 0.0);
  CHECK(p.eval(0.2) == 0.3);
  CHECK(p.eval(0.59) == 0.3);
  CHECK(p.eval(0.6) == 0.7);
  CHECK(p.eval(1.0) == 1.0);
  // 0.3 (0.36 - 0.04)/2 + 0.7 (1 - 0.36)/2
  CHECK(p.q_integral() == doctest::Approx(0.272));
  CHECK(OrderParameter::annealed().q_integral() == doctest::Approx(0.5));
  CHECK(OrderParameter().q_integral() == 0.0);
  CHECK(OrderParameter::parse(p.to_string()) == p);
  CHECK(OrderParameter::from_json(p.to_json()) == p);
  CHECK(OrderParameter::parse("zero").k() == 0);
  CHECK(OrderParameter::parse("annealed").is_annealed());
  CHECK_THROWS_AS(OrderParameter({0.7, 0.3}, {0.2, 0.6}), ValidationError);
  CHECK_THROWS_AS(OrderParameter({0.3, 0.7}, {0.6, 0.2}), ValidationError);
  CHECK_THROWS_AS(OrderParameter({0.5}, {1.0}), ValidationError);
  CHECK_THROWS_AS(OrderParameter({1.0, 1.0}, {0.2, 0.4}), ValidationError);
  CHECK_THROWS_AS(OrderParameter::from_json({{"x", {0.5}}, {"q", {0.1}}, {"z", 1}}), ValidationError);
}

TEST_CASE("normalized order parameters drop degenerate levels") {
  const auto p = OrderParameter::normalized({0.0, 0.4, 0.4, 0.9}, {0.1, 0.3, 0.5, 1.0});
  CHECK(p.x() == std::vector<double>{0.4});
  CHECK(p.q() == std::vector<double>{0.3});
  CHECK_THROWS_AS(OrderParameter::normalized({0.5, 0.4}, {0.1, 0.2}), ValidationError);
}

TEST_CASE("covariance series") {
  const auto sk = CovarianceSeries::sk();
  CHECK(sk.f(0.5) == doctest::Approx(0.25));
  CHECK(sk.fprime(0.5) == doctest::Approx(1.0));
  CHECK(sk.phi(0.5) == doctest::Approx(0.25));
  CHECK(sk.is_convex());
  const CovarianceSeries mix({{2, 0.5}, {3, 0.5}});
  CHECK(mix.fsecond(0.4) == doctest::Approx(0.5 * 2 + 0.5 * 6 * 0.4));
  CHECK_FALSE(CovarianceSeries::pspin(3).is_convex());
  CHECK(CovarianceSeries::from_json(mix.to_json()) == mix);
  CHECK_THROWS_AS(CovarianceSeries({{2, 0.5}, {4, 0.4}}), ValidationError);
  CHECK_THROWS_AS(CovarianceSeries({{2, 1.2}, {4, -0.2}}), ValidationError);
}

TEST_CASE("spins and overlaps") {
  const auto a = SpinConfig::ones(4), b = SpinConfig::from_bits(0b0101, 4);
  CHECK(b[0] == -1);
  CHECK(b[1] == 1);
  CHECK(overlap(a, a) == 1.0);
  CHECK(overlap(a, b) == 0.0);
  CHECK(overlap(a, a.flipped()) == -1.0);
  CHECK_THROWS_AS(SpinConfig({1, 0, -1}), ValidationError);
}

TEST_CASE("statistics helpers") {
  const auto e = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == 2.5);
  CHECK(e.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(log_sum_exp({1000.0, 1000.0}) == doctest::Approx(1000.0 + std::log(2.0)));
  LogSumExp acc;
  for (double v : {-3.0, 2.0, 0.5}) acc.add(v);
  CHECK(acc.value() == doctest::Approx(std::log(std::exp(-3.0) + std::exp(2.0) + std::exp(0.5))));
  CHECK(log_cosh(0.3) == doctest::Approx(std::log(std::cosh(0.3))));
  CHECK(log_cosh(800.0) == doctest::Approx(800.0 - std::log(2.0)));
  CHECK(standard_normal_cdf(0.0) == doctest::Approx(0.5));
}

TEST_CASE("superadditive sequences") {
  const auto lin = superadditive_limit_check(tabulate_sequence([](std::size_t n) { return 2.0 * n; }, 50), 5);
  CHECK(lin.ok());
  CHECK(lin.sup_estimate == 2.0);
  const auto root = superadditive_limit_check(
      tabulate_sequence([](std::size_t n) { return n - std::sqrt(static_cast<double>(n)); }, 100), 5);
  CHECK(root.ok());
  for (std::size_t i = 1; i < root.ratio.size(); ++i) CHECK(root.ratio[i] > root.ratio[i - 1]);
  CHECK(root.sup_estimate == root.ratio.back());
  CHECK(root.sup_estimate < 1.0);
  // Q_N = N + (-1)^N breaks the inequality at (1, 2) first
  const auto alt = superadditive_limit_check(
      tabulate_sequence([](std::size_t n) { return n + (n % 2 ? -1.0 : 1.0); }, 40), 5);
  CHECK_FALSE(alt.ok());
  REQUIRE(alt.first_violation.has_value());
  CHECK(alt.first_violation->first == 1);
  CHECK(alt.first_violation->second == 2);
}
