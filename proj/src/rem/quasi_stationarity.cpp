#include "sglab/rem/quasi_stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"

namespace sglab::rem {

EvolveResult evolve(const PointConfiguration& cfg, const IncrementLaw& g, RandomStream& rng) {
  const std::size_t n = cfg.points.size();
  std::vector<double> gam(n), val(n);
  for (std::size_t i = 0; i < n; ++i) {
    gam[i] = g.sample(rng);
    if (!(gam[i] > 0.0)) throw ValidationError("increment law produced a nonpositive value");
    val[i] = gam[i] * cfg.points[i];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] > val[b]; });
  EvolveResult r;
  r.config.x = cfg.x;
  r.config.points.resize(n);
  r.increments.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.config.points[i] = val[order[i]];
    r.increments[i] = gam[order[i]];
  }
  // Points that started below epsilon are missing, so the evolved sample is
  // only complete above the smallest retained value.
  r.config.epsilon = n ? r.config.points.back() * 0.5 : cfg.epsilon;
  return r;
}

namespace {

void check_common(double x, double epsilon, std::size_t top_n, std::size_t trials) {
  require(x > 0.0 && x < 1.0, "REM parameter x must lie in (0, 1)");
  require(epsilon > 0.0, "epsilon must be positive");
  require(top_n >= 1 && trials >= 2, "need top_n >= 1 and at least two trials");
}

std::vector<double> ranked(const PointConfiguration& cfg, std::size_t top_n, double scale, bool normalize) {
  require(cfg.points.size() >= top_n, "too few points above epsilon for top_n; lower epsilon");
  double denom = scale;
  if (normalize) denom = partition_sum(cfg).z;
  std::vector<double> v(top_n);
  for (std::size_t i = 0; i < top_n; ++i) v[i] = cfg.points[i] / denom;
  return v;
}

}  // namespace

KsReport quasi_stationarity_test(double x, const IncrementLaw& g, double epsilon, std::size_t top_n,
                                 std::size_t trials, std::uint64_t seed, QsForm form) {
  check_common(x, epsilon, top_n, trials);
  const double k = g.correction(x);
  struct Row {
    std::vector<double> evolved, fresh;
  };
  auto rows = parallel_draws(trials, seed, [&](std::size_t, RandomStream& rng) {
    RandomStream a = rng.split(0), b = rng.split(1), c = rng.split(2);
    const auto start = sample_rem(x, epsilon, a);
    const auto moved = evolve(start, g, b);
    const auto fresh = sample_rem(x, epsilon, c);
    Row r;
    switch (form) {
      case QsForm::normalized:
        r.evolved = ranked(moved.config, top_n, 1.0, true);
        r.fresh = ranked(fresh, top_n, 1.0, true);
        break;
      case QsForm::corrected:
        r.evolved = ranked(moved.config, top_n, k, false);
        r.fresh = ranked(fresh, top_n, 1.0, false);
        break;
      case QsForm::uncorrected:
        r.evolved = ranked(moved.config, top_n, 1.0, false);
        r.fresh = ranked(fresh, top_n, 1.0, false);
        break;
    }
    return r;
  });
  KsReport rep;
  std::vector<double> ps;
  for (std::size_t n = 0; n < top_n; ++n) {
    std::vector<double> a(trials), b(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      a[t] = rows[t].evolved[n];
      b[t] = rows[t].fresh[n];
    }
    rep.per_rank.push_back(ks_two_sample(std::move(a), std::move(b)));
    ps.push_back(rep.per_rank.back().p_value);
  }
  rep.combined_p = bonferroni(ps);
  rep.pass = rep.combined_p > 0.01;
  return rep;
}

TiltReport tilted_increment_test(double x, const IncrementLaw& g, double epsilon, std::size_t top_n,
                                 std::size_t trials, std::uint64_t seed) {
  check_common(x, epsilon, top_n, trials);
  auto rows = parallel_draws(trials, seed, [&](std::size_t, RandomStream& rng) {
    RandomStream a = rng.split(0), b = rng.split(1);
    const auto start = sample_rem(x, epsilon, a);
    auto moved = evolve(start, g, b);
    require(moved.increments.size() >= top_n, "too few points above epsilon for top_n; lower epsilon");
    moved.increments.resize(top_n);
    return moved.increments;
  });
  const IncrementLaw tilt = g.tilted(x);
  std::vector<double> all;
  all.reserve(trials * top_n);
  // Pearson correlation between rank and ln g~
  double sn = 0, sv = 0, snn = 0, svv = 0, snv = 0;
  std::size_t hits = 0;
  for (const auto& r : rows)
    for (std::size_t n = 0; n < top_n; ++n) {
      const double v = std::log(r[n]), rank = static_cast<double>(n + 1);
      all.push_back(r[n]);
      sn += rank;
      sv += v;
      snn += rank * rank;
      svv += v * v;
      snv += rank * v;
      if (r[n] == g.a()) ++hits;
    }
  TiltReport rep;
  rep.count = all.size();
  const double cnt = static_cast<double>(rep.count);
  const double cov = snv / cnt - (sn / cnt) * (sv / cnt);
  const double vn = snn / cnt - (sn / cnt) * (sn / cnt);
  const double vv = svv / cnt - (sv / cnt) * (sv / cnt);
  rep.rank_correlation = (vn > 0 && vv > 0) ? cov / std::sqrt(vn * vv) : 0.0;
  rep.rank_correlation_se = 1.0 / std::sqrt(cnt);
  const bool independent = std::fabs(rep.rank_correlation) <= 3.0 * rep.rank_correlation_se;
  if (g.is_discrete()) {
    rep.frequency_a = static_cast<double>(hits) / cnt;
    rep.expected_frequency_a = g.kind() == IncrementLaw::Kind::point_mass ? 1.0 : tilt.p();
    rep.pass = std::fabs(rep.frequency_a - rep.expected_frequency_a) <= 0.02 && independent;
  } else {
    rep.ks = ks_one_sample(all, [&](double v) { return tilt.cdf(v); });
    rep.pass = rep.ks.p_value > 0.01 && independent;
  }
  return rep;
}

}  // namespace sglab::rem
