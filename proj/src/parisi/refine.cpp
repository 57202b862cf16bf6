#include "sglab/parisi/refine.hpp"

#include <algorithm>
#include <cmath>

#include "sglab/core/error.hpp"

namespace sglab::parisi {

LevelSchedule discretize(const std::function<double(double)>& x, int steps) {
  require(steps >= 1, "refinement needs at least one step");
  std::vector<double> xs, qs;
  for (int i = 0; i < steps; ++i) {
    const double q = static_cast<double>(i) / steps;
    const double v = x(q);
    require(std::isfinite(v) && v >= 0.0 && v <= 1.0, "x(q) must take values in [0, 1]");
    require(xs.empty() || v >= xs.back(), "x(q) must be nondecreasing");
    xs.push_back(v);
    qs.push_back(q);
  }
  return LevelSchedule::make(std::move(xs), std::move(qs)).merged();
}

RefinementReport refine_continuous(const std::function<double(double)>& x, double beta, double h,
                                   const std::vector<int>& steps, const SolverSettings& settings) {
  require(!steps.empty(), "refinement needs at least one level");
  RefinementReport rep;
  for (int k : steps) {
    rep.steps.push_back(k);
    rep.values.push_back(parisi_functional(discretize(x, k), beta, h, settings).value);
    if (rep.values.size() > 1) rep.differences.push_back(rep.values.back() - rep.values[rep.values.size() - 2]);
  }
  rep.converged = !rep.differences.empty() && std::fabs(rep.differences.back()) < 1e-4;
  return rep;
}

RefinementReport refine_continuous(const std::vector<double>& q_grid, const std::vector<double>& x_values,
                                   double beta, double h, const std::vector<int>& steps,
                                   const SolverSettings& settings) {
  require(q_grid.size() == x_values.size() && q_grid.size() >= 2, "x(q) needs at least two grid points");
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    require(q_grid[i] > q_grid[i - 1], "q grid must be increasing");
    require(x_values[i] >= x_values[i - 1], "x(q) must be nondecreasing");
  }
  auto interp = [&](double q) {
    if (q <= q_grid.front()) return x_values.front();
    if (q >= q_grid.back()) return x_values.back();
    const auto it = std::upper_bound(q_grid.begin(), q_grid.end(), q);
    const std::size_t i = static_cast<std::size_t>(it - q_grid.begin());
    const double a = q_grid[i - 1], b = q_grid[i];
    return x_values[i - 1] + (x_values[i] - x_values[i - 1]) * (q - a) / (b - a);
  };
  return refine_continuous(interp, beta, h, steps, settings);
}

}  // namespace sglab::parisi
