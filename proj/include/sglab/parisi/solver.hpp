#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/order_parameter.hpp"
#include "sglab/parisi/schedule.hpp"

namespace sglab::parisi {

struct SolverSettings {
  int quad_order = 120;
  double spacing = 0.02;    // y-grid step, at most 0.05
  double half_width = 0.0;  // 0 picks 8 + beta k + |h|
  // covariance of the general model; the field variance profile is f'(q)/2
  std::optional<CovarianceSeries> f;
};

// f(q, y) tabulated at the level boundaries. levels[j] holds f(q_j, .) on
// the grid for j = 1..k (levels[0] is unused); f(1, y) is evaluated in
// closed form. Immutable once built.
class ParisiSolution {
 public:
  LevelSchedule schedule;
  double beta = 0.0;
  double h = 0.0;
  SolverSettings settings;
  std::vector<double> grid;
  std::vector<std::vector<double>> levels;
  double value = 0.0;  // f(0, 0)
  std::vector<std::string> warnings;

  // f(q_j, y), j in [1, k+1]; quintic interpolation inside the grid, the
  // linear asymptote beta |y + h| outside.
  double level_value(std::size_t j, double y) const;
  bool covers(double y) const noexcept { return !grid.empty() && y >= grid.front() && y <= grid.back(); }
  // field variance profile g(q)
  double profile(double q) const;
  double boundary(double y) const;
};

ParisiSolution solve_recursive(const OrderParameter& params, double beta, double h,
                               const SolverSettings& settings = {});
ParisiSolution solve_schedule(const LevelSchedule& schedule, double beta, double h,
                              const SolverSettings& settings = {});

struct FunctionalValue {
  double value = 0.0;       // P[x]
  double f00 = 0.0;         // f(0, 0; x)
  double correction = 0.0;  // (beta^2 / 2) int q x(q) dq, or its general-f analogue
};

FunctionalValue parisi_functional(const OrderParameter& params, double beta, double h,
                                  const SolverSettings& settings = {});
FunctionalValue parisi_functional(const LevelSchedule& schedule, double beta, double h,
                                  const SolverSettings& settings = {});

// f(t, y) for any t in [0, 1]; between boundaries one partial Cole-Hopf
// step is taken from the next boundary above t.
double martingale_weight(const ParisiSolution& sol, double t, double y, bool* extrapolated = nullptr);

}  // namespace sglab::parisi
