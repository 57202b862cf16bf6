#include "sglab/cascade/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/gaussian/quadrature.hpp"

namespace sglab::cascade {

Psi Psi::log_cosh(double beta, double h) {
  require(std::isfinite(beta) && std::isfinite(h), "log-cosh psi needs finite beta and h");
  return {"log-cosh:" + format_double(beta) + ":" + format_double(h),
          [beta, h](double y) { return sglab::log_cosh(beta * (y + h)); }, std::fabs(beta)};
}

Psi Psi::linear(double a) {
  require(std::isfinite(a), "linear psi needs a finite slope");
  return {"linear:" + format_double(a), [a](double y) { return a * y; }, std::fabs(a)};
}

Psi Psi::sigmoid(double a) {
  require(std::isfinite(a), "sigmoid psi needs a finite scale");
  return {"sigmoid:" + format_double(a), [a](double y) { return a / (1.0 + std::exp(-y)); }, 0.25 * std::fabs(a)};
}

Psi Psi::constant(double c) {
  require(std::isfinite(c), "constant psi needs a finite value");
  return {"const:" + format_double(c), [c](double) { return c; }, 0.0};
}

Psi Psi::custom(std::string name, std::function<double(double)> f, double lipschitz) {
  require(static_cast<bool>(f), "custom psi needs a function");
  return {std::move(name), std::move(f), lipschitz};
}

Psi Psi::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  require(!parts.empty(), "empty psi");
  std::vector<double> v;
  for (std::size_t i = 1; i < parts.size(); ++i) v.push_back(parse_double(parts[i]));
  const std::string& name = parts[0];
  if (name == "log-cosh" && (v.size() == 1 || v.size() == 2)) return log_cosh(v[0], v.size() == 2 ? v[1] : 0.0);
  if (name == "linear" && v.size() == 1) return linear(v[0]);
  if (name == "sigmoid" && v.size() == 1) return sigmoid(v[0]);
  if (name == "const" && v.size() == 1) return constant(v[0]);
  throw ValidationError("psi must be log-cosh:beta[:h], linear:a, sigmoid:a or const:c, got '" + text + "'");
}

double lipschitz_on_grid(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
  require(n >= 2 && hi > lo, "lipschitz scan needs a nondegenerate grid");
  const double step = (hi - lo) / static_cast<double>(n - 1);
  double best = 0.0, prev = f(lo);
  for (std::size_t i = 1; i < n; ++i) {
    const double cur = f(lo + step * static_cast<double>(i));
    best = std::max(best, std::fabs(cur - prev) / step);
    prev = cur;
  }
  return best;
}

std::function<double(double)> cole_hopf_step(std::function<double(double)> psi, double x, double variance,
                                             int order) {
  require(x >= 0.0 && x <= 1.0, "Cole-Hopf step needs x in [0, 1]");
  require(variance >= 0.0, "Cole-Hopf step needs a nonnegative variance");
  const auto& rule = gaussian::gauss_hermite(order);
  const double sd = std::sqrt(variance);
  return [psi = std::move(psi), x, sd, &rule](double y) {
    if (x == 0.0) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * psi(y + sd * rule.nodes[i]);
      return s;
    }
    LogSumExp acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc.add(std::log(rule.weights[i]) + x * psi(y + sd * rule.nodes[i]));
    return acc.value() / x;
  };
}

namespace {

void check_psi(const Psi& psi) {
  require(static_cast<bool>(psi.f), "psi has no function");
  require(std::isfinite(psi.lipschitz) && psi.lipschitz >= 0.0, "psi must have a finite Lipschitz bound");
  const double seen = lipschitz_on_grid(psi.f, -20.0, 20.0);
  require(seen <= psi.lipschitz * (1.0 + 1e-6) + 1e-9,
          "psi '" + psi.name + "' exceeds its Lipschitz bound on [-20, 20]");
}

EvolvedWeights evolve_checked(const Cascade& c, const Psi& psi, RandomStream& rng, double t) {
  const auto field = hierarchical_field(c, 1, rng, t);
  std::vector<double> lv(c.leaves());
  double shift = -INFINITY;
  for (std::size_t a = 0; a < lv.size(); ++a) shift = std::max(shift, lv[a] = psi.f(field.at(0, a)));
  const auto& rule = gaussian::gauss_hermite(40);
  const double sd = std::sqrt(field.leaf_variance);
  // dust: E e^{psi(a + sd z)} over the unseen atoms' own increments
  std::vector<double> ld(c.parents(), -INFINITY);
  for (std::size_t b = 0; b < ld.size(); ++b) {
    if (c.dust[b] <= 0.0) continue;
    LogSumExp acc;
    const double base = field.at_parent(0, b);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      acc.add(std::log(rule.weights[i]) + psi.f(base + sd * rule.nodes[i]));
    shift = std::max(shift, ld[b] = acc.value());
  }
  EvolvedWeights out;
  out.leaves.resize(lv.size());
  out.dust.assign(ld.size(), 0.0);
  double z = 0.0;
  for (std::size_t a = 0; a < lv.size(); ++a) z += out.leaves[a] = c.leaf_weights[a] * std::exp(lv[a] - shift);
  for (std::size_t b = 0; b < ld.size(); ++b)
    if (c.dust[b] > 0.0) z += out.dust[b] = c.dust[b] * std::exp(ld[b] - shift);
  if (!(z > 0.0) || !std::isfinite(z)) throw NumericalError("evolved cascade weights are not summable");
  for (auto& w : out.leaves) w /= z;
  for (auto& w : out.dust) w /= z;
  return out;
}

}  // namespace

EvolvedWeights evolve_cascade(const Cascade& c, const Psi& psi, RandomStream& rng, double t) {
  check_psi(psi);
  return evolve_checked(c, psi, rng, t);
}

std::vector<double> top_weights(std::vector<double> w, std::size_t n) {
  require(w.size() >= n, "fewer leaves than requested ranks");
  std::partial_sort(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n), w.end(), std::greater<>());
  w.resize(n);
  return w;
}

CascadeQsReport cascade_quasi_stationarity(const OrderParameter& params, std::size_t m, const Psi& psi,
                                           std::size_t top_n, std::size_t trials, std::uint64_t seed, double t,
                                           const std::optional<OrderParameter>& reference) {
  require(top_n >= 1 && trials >= 2, "need top_n >= 1 and at least two trials");
  check_psi(psi);
  const OrderParameter& ref = reference ? *reference : params;
  struct Row {
    std::vector<double> evolved, fresh;
  };
  auto rows = parallel_draws(trials, seed, [&](std::size_t, RandomStream& rng) {
    const Cascade c = build_cascade(params, m, derive_seed(rng.key(), 0));
    RandomStream field_rng = rng.split(1);
    const auto ev = evolve_checked(c, psi, field_rng, t);
    const Cascade f = build_cascade(ref, m, derive_seed(rng.key(), 2));
    std::vector<double> fp(f.leaves());
    for (std::size_t a = 0; a < fp.size(); ++a) fp[a] = f.p(a);
    return Row{top_weights(ev.leaves, top_n), top_weights(std::move(fp), top_n)};
  });
  CascadeQsReport rep;
  std::vector<double> ps;
  for (std::size_t n = 0; n < top_n; ++n) {
    std::vector<double> a(trials), b(trials);
    for (std::size_t i = 0; i < trials; ++i) {
      a[i] = rows[i].evolved[n];
      b[i] = rows[i].fresh[n];
    }
    rep.per_rank.push_back(ks_two_sample(std::move(a), std::move(b)));
    ps.push_back(rep.per_rank.back().p_value);
  }
  rep.combined_p = bonferroni(ps);
  rep.pass = rep.combined_p > 0.01;
  return rep;
}

}  // namespace sglab::cascade
