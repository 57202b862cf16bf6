#pragma once

#include <functional>
#include <vector>

#include "sglab/parisi/solver.hpp"

namespace sglab::parisi {

struct RefinementReport {
  std::vector<int> steps;
  std::vector<double> values;       // P[x_k]
  std::vector<double> differences;  // values[i] - values[i-1]
  bool converged = false;           // last |difference| < 1e-4
};

// x_k is right-continuous and piecewise constant on k equal intervals,
// taking the value of x at each interval's left endpoint.
LevelSchedule discretize(const std::function<double(double)>& x, int steps);

RefinementReport refine_continuous(const std::function<double(double)>& x, double beta, double h,
                                   const std::vector<int>& steps = {2, 4, 8, 16},
                                   const SolverSettings& settings = {});

// x given on a grid of q values (linear interpolation in between); it must be
// monotone with values in [0, 1].
RefinementReport refine_continuous(const std::vector<double>& q_grid, const std::vector<double>& x_values,
                                   double beta, double h, const std::vector<int>& steps = {2, 4, 8, 16},
                                   const SolverSettings& settings = {});

}  // namespace sglab::parisi
