#include "sglab/variational/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/rng.hpp"
#include "sglab/gaussian/quadrature.hpp"
#include "sglab/variational/nelder_mead.hpp"

namespace sglab::variational {

namespace {

// cumulative softmax over k + 1 bins, last logit pinned at 0
std::vector<double> cumulative(const double* u, std::size_t k) {
  double top = 0.0;
  for (std::size_t i = 0; i < k; ++i) top = std::max(top, u[i]);
  std::vector<double> e(k + 1);
  double total = 0.0;
  for (std::size_t i = 0; i <= k; ++i) total += (e[i] = std::exp((i < k ? u[i] : 0.0) - top));
  std::vector<double> c(k);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) c[i] = std::min(acc += e[i] / total, 1.0);
  return c;
}

std::vector<double> logits(const std::vector<double>& c) {
  const std::size_t k = c.size();
  const double last = 1.0 - c.back();
  std::vector<double> u(k);
  for (std::size_t i = 0; i < k; ++i) u[i] = std::log((c[i] - (i ? c[i - 1] : 0.0)) / last);
  return u;
}

// A k-step starting point near the (k-1)-step optimum: the old levels stay,
// the new one splits the top interval.
std::vector<double> extend(const OrderParameter& prev, std::size_t k) {
  std::vector<double> x, q;
  for (std::size_t i = 1; i <= prev.k(); ++i) {
    x.push_back(std::min(prev.x_at(i), 0.95));
    q.push_back(std::max(prev.q_at(i), 0.02));
  }
  while (x.size() > k) {
    x.pop_back();
    q.pop_back();
  }
  while (x.size() < k) {
    const double xl = x.empty() ? 0.2 : x.back(), ql = q.empty() ? 0.0 : q.back();
    x.push_back(xl + 0.5 * (1.0 - xl));
    q.push_back(ql + 0.5 * (1.0 - ql));
  }
  for (std::size_t i = 1; i < k; ++i) {
    x[i] = std::max(x[i], x[i - 1] + 1e-3);
    q[i] = std::max(q[i], q[i - 1] + 1e-3);
  }
  for (std::size_t i = 0; i < k; ++i) {
    x[i] = std::min(x[i], 1.0 - 1e-3 * static_cast<double>(k - i));
    q[i] = std::min(q[i], 1.0 - 1e-3 * static_cast<double>(k - i));
  }
  return encode(x, q);
}

double value_of(const OrderParameter& p, double beta, double h, const parisi::SolverSettings& s) {
  return parisi::parisi_functional(p, beta, h, s).value;
}

}  // namespace

OrderParameter decode(const std::vector<double>& theta, std::size_t k) {
  require(theta.size() == 2 * k, "decode: expected 2k parameters");
  if (k == 0) return OrderParameter::annealed();
  return OrderParameter::normalized(cumulative(theta.data(), k), cumulative(theta.data() + k, k));
}

std::vector<double> encode(const std::vector<double>& x, const std::vector<double>& q) {
  require(x.size() == q.size() && !x.empty(), "encode: x and q must be nonempty and of equal length");
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(x[i] > (i ? x[i - 1] : 0.0) && x[i] < 1.0, "encode: need 0 < x_1 < ... < x_k < 1");
    require(q[i] > (i ? q[i - 1] : 0.0) && q[i] < 1.0, "encode: need 0 < q_1 < ... < q_k < 1");
  }
  auto u = logits(x);
  const auto v = logits(q);
  u.insert(u.end(), v.begin(), v.end());
  return u;
}

nlohmann::json VariationalResult::to_json() const {
  nlohmann::json trace_json = nlohmann::json::array();
  for (const auto& t : trace) trace_json.push_back({t.k, t.restart, t.iteration, t.value});
  return {{"k", k},
          {"params", params.to_json()},
          {"value", value},
          {"converged", converged},
          {"stagnated", stagnated},
          {"from_smaller_k", from_smaller_k},
          {"per_k", per_k},
          {"trace_columns", {"k", "restart", "iteration", "value"}},
          {"trace", trace_json}};
}

VariationalResult optimize(std::size_t k, double beta, double h, std::uint64_t seed, const OptimizeOptions& options) {
  require(k <= kMaxSteps, "variational: k must be in {0, 1, 2, 3}");
  require(options.restarts >= 1, "variational: need at least one restart");
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(h), "h must be finite");
  VariationalResult out;
  out.k = k;
  out.params = OrderParameter::annealed();
  out.value = value_of(out.params, beta, h, options.settings);
  out.per_k.push_back(out.value);
  out.converged = true;
  for (std::size_t j = 1; j <= k; ++j) {
    const auto seed_point = extend(out.params, j);
    const auto runs = parallel_map(options.restarts, [&](std::size_t r) {
      std::vector<double> start = seed_point;
      if (r > 0) {
        RandomStream rng(derive_seed(seed, j * 1000 + r));
        for (auto& v : start) v = 1.5 * rng.normal();
      }
      NelderMeadOptions nm;
      nm.tolerance = options.tolerance;
      nm.max_iterations = options.max_iterations;
      return nelder_mead([&](const std::vector<double>& t) { return value_of(decode(t, j), beta, h, options.settings); },
                         start, nm);
    });
    std::size_t best = 0;
    bool any_converged = false;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].value < runs[best].value) best = r;
      any_converged = any_converged || runs[r].converged;
      for (std::size_t it = 0; it < runs[r].trace.size(); ++it)
        out.trace.push_back({j, r, it + 1, runs[r].trace[it]});
    }
    out.converged = any_converged;
    // a tie within rounding goes to the smaller family
    if (runs[best].value < out.value - 1e-12 * std::max(1.0, std::fabs(out.value))) {
      out.value = runs[best].value;
      out.params = decode(runs[best].x, j);
      out.from_smaller_k = false;
    } else {
      out.from_smaller_k = true;
    }
    out.per_k.push_back(out.value);
  }
  out.stagnated = !out.converged;
  return out;
}

double rs_residual(double q, double beta, double h) {
  const auto& rule = gaussian::gauss_hermite(300);
  const double s = std::sqrt(q);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = std::tanh(beta * (s * rule.nodes[i] + h));
    acc += rule.weights[i] * t * t;
  }
  return acc - q;
}

double rs_stationary_point(double beta, double h) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and >= 0");
  require(std::isfinite(h), "h must be finite");
  // q = 0 is the only fixed point there; iterating would crawl near beta = 1
  if (h == 0.0 && beta <= 1.0) return 0.0;
  // stop on the residual, not the step: near the transition the map
  // contracts slowly and a small step can sit far from the fixed point
  double q = 1.0;
  for (int it = 0; it < 10000; ++it) {
    const double r = rs_residual(q, beta, h);
    if (std::fabs(r) < 1e-12) return q;
    q += 0.5 * r;
  }
  throw NumericalError("RS fixed-point iteration did not converge in 10^4 steps");
}

}  // namespace sglab::variational
