#include "sglab/parisi/solver.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/gaussian/quadrature.hpp"

namespace sglab::parisi {

namespace {

constexpr double kLn2 = 0.6931471805599453;

// (1/x) ln E exp(x F(y + sd z)), or E F(y + sd z) at x = 0
template <class F>
double cole_hopf(const F& fn, double x, double sd, double y, const gaussian::QuadratureRule& rule,
                 const std::vector<double>& log_w) {
  const std::size_t n = rule.nodes.size();
  if (x == 0.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * fn(y + sd * rule.nodes[i]);
    return s;
  }
  double v[400];
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += rule.weights[i] * (v[i] = fn(y + sd * rule.nodes[i]));
  double spread = 0.0;
  for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::fabs(v[i] - mean));
  if (x * spread <= 0.5) {
    // centred expm1 form; the plain log loses ~eps / x for small x
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rule.weights[i] * std::expm1(x * (v[i] - mean));
    return mean + std::log1p(s) / x;
  }
  LogSumExp acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(log_w[i] + x * v[i]);
  return acc.value() / x;
}

std::vector<double> log_weights(const gaussian::QuadratureRule& rule) {
  std::vector<double> lw(rule.weights.size());
  for (std::size_t i = 0; i < lw.size(); ++i) lw[i] = std::log(rule.weights[i]);
  return lw;
}

}  // namespace

double ParisiSolution::profile(double q) const { return settings.f ? 0.5 * settings.f->fprime(q) : q; }

double ParisiSolution::boundary(double y) const { return log_cosh(beta * (y + h)); }

double ParisiSolution::level_value(std::size_t j, double y) const {
  if (j == schedule.k() + 1) return boundary(y);
  const auto& tab = levels[j];
  const std::size_t n = grid.size();
  const double y0 = grid.front(), step = grid[1] - grid[0];
  if (y <= y0) return tab.front() + beta * (std::fabs(y + h) - std::fabs(y0 + h));
  if (y >= grid.back()) return tab.back() + beta * (std::fabs(y + h) - std::fabs(grid.back() + h));
  const double u = (y - y0) / step;
  const auto i = static_cast<std::size_t>(u);
  // six-point Lagrange stencil, shifted inward at the edges
  const std::size_t i0 = std::min(i > 2 ? i - 2 : 0, n - 6);
  const double t = u - static_cast<double>(i0);
  static constexpr double kDenom[6] = {-120.0, 24.0, -12.0, 12.0, -24.0, 120.0};
  double d[6], left[6], right[6];
  for (int a = 0; a < 6; ++a) d[a] = t - a;
  left[0] = right[5] = 1.0;
  for (int a = 1; a < 6; ++a) left[a] = left[a - 1] * d[a - 1];
  for (int a = 4; a >= 0; --a) right[a] = right[a + 1] * d[a + 1];
  double acc = 0.0;
  for (int a = 0; a < 6; ++a) acc += left[a] * right[a] / kDenom[a] * tab[i0 + static_cast<std::size_t>(a)];
  return acc;
}

ParisiSolution solve_schedule(const LevelSchedule& schedule, double beta, double h, const SolverSettings& settings) {
  require(std::isfinite(beta) && beta >= 0.0, "beta must be finite and nonnegative");
  require(std::isfinite(h), "h must be finite");
  require(settings.quad_order >= 20, "quadrature order must be at least 20");
  require(settings.spacing > 0.0 && settings.spacing <= 0.05, "y-grid spacing must lie in (0, 0.05]");
  ParisiSolution sol;
  sol.schedule = schedule;
  sol.beta = beta;
  sol.h = h;
  sol.settings = settings;
  const std::size_t k = schedule.k();
  const double needed = 8.0 + beta * static_cast<double>(k) + std::fabs(h);
  double width = settings.half_width;
  if (width == 0.0) width = needed;
  require(width >= needed, "y-grid underspan: half width must be at least 8 + beta k + |h|");
  const auto half = static_cast<std::size_t>(std::ceil(width / settings.spacing));
  const double step = width / static_cast<double>(half);
  sol.grid.resize(2 * half + 1);
  for (std::size_t i = 0; i <= 2 * half; ++i)
    sol.grid[i] = (static_cast<double>(i) - static_cast<double>(half)) * step;
  sol.grid[half] = 0.0;

  const auto& rule = gaussian::gauss_hermite(settings.quad_order);
  const auto log_w = log_weights(rule);
  sol.levels.assign(k + 1, {});
  constexpr std::size_t kChunk = 128;
  const std::size_t chunks = (sol.grid.size() + kChunk - 1) / kChunk;
  for (std::size_t j = k; j >= 1; --j) {
    const double x = schedule.x_at(j);
    const double var = sol.profile(schedule.q_at(j + 1)) - sol.profile(schedule.q_at(j));
    require(var >= -1e-15, "field profile must be nondecreasing");
    const double sd = std::sqrt(std::max(var, 0.0));
    if (x == 0.0) sol.warnings.push_back("interior level with x = 0 treated as a plain expectation");
    auto next = [&](double y) { return sol.level_value(j + 1, y); };
    auto parts = parallel_map(chunks, [&](std::size_t c) {
      std::vector<double> part;
      const std::size_t end = std::min(sol.grid.size(), (c + 1) * kChunk);
      for (std::size_t g = c * kChunk; g < end; ++g)
        part.push_back(sd == 0.0 ? next(sol.grid[g]) : cole_hopf(next, x, sd, sol.grid[g], rule, log_w));
      return part;
    });
    auto& tab = sol.levels[j];
    tab.reserve(sol.grid.size());
    for (auto& p : parts) tab.insert(tab.end(), p.begin(), p.end());
    for (double v : tab)
      if (!std::isfinite(v)) throw NumericalError("Parisi recursion produced a nonfinite value");
    // the edges must already follow the asymptote |f'| -> beta
    const double left = (tab[1] - tab[0]) / step, right = (tab[tab.size() - 1] - tab[tab.size() - 2]) / step;
    const double cap = beta * (1.0 + 1e-6) + 1e-12;
    if (std::fabs(left) > cap || std::fabs(right) > cap || (beta > 0.0 && (left >= 0.0 || right <= 0.0)))
      throw NumericalError("y-grid underspan: boundary slope test failed at level " + std::to_string(j));
  }
  const double var0 = sol.profile(schedule.q_at(1));
  const double sd0 = std::sqrt(std::max(var0, 0.0));
  auto first = [&](double y) { return sol.level_value(1, y); };
  sol.value = sd0 == 0.0 ? first(0.0) : cole_hopf(first, 0.0, sd0, 0.0, rule, log_w);
  return sol;
}

ParisiSolution solve_recursive(const OrderParameter& params, double beta, double h, const SolverSettings& settings) {
  return solve_schedule(LevelSchedule::from(params), beta, h, settings);
}

FunctionalValue parisi_functional(const LevelSchedule& schedule, double beta, double h,
                                  const SolverSettings& settings) {
  const auto sol = solve_schedule(schedule, beta, h, settings);
  FunctionalValue v;
  v.f00 = sol.value;
  v.correction = 0.5 * beta * beta * (settings.f ? schedule.phi_integral(*settings.f) : schedule.q_integral());
  v.value = kLn2 + v.f00 - v.correction;
  return v;
}

FunctionalValue parisi_functional(const OrderParameter& params, double beta, double h,
                                  const SolverSettings& settings) {
  return parisi_functional(LevelSchedule::from(params), beta, h, settings);
}

double martingale_weight(const ParisiSolution& sol, double t, double y, bool* extrapolated) {
  require(t >= 0.0 && t <= 1.0, "t must lie in [0, 1]");
  const auto& s = sol.schedule;
  const std::size_t k = s.k();
  std::size_t j = 0;  // q_j <= t < q_{j+1}
  while (j < k && s.q_at(j + 1) <= t) ++j;
  if (extrapolated) *extrapolated = !sol.covers(y);
  if (t == 1.0) return sol.boundary(y);
  if (j >= 1 && s.q_at(j) == t) return sol.level_value(j, y);
  const double lower = (j == 0 && t == 0.0) ? 0.0 : sol.profile(t);
  const double var = sol.profile(s.q_at(j + 1)) - lower;
  const double sd = std::sqrt(std::max(var, 0.0));
  if (sd == 0.0) return sol.level_value(j + 1, y);
  const auto& rule = gaussian::gauss_hermite(sol.settings.quad_order);
  const auto log_w = log_weights(rule);
  return cole_hopf([&](double v) { return sol.level_value(j + 1, v); }, s.x_at(j), sd, y, rule, log_w);
}

}  // namespace sglab::parisi
