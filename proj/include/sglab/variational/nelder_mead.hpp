#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sglab::variational {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double tolerance = 1e-6;  // simplex diameter in parameter space
  std::size_t max_iterations = 4000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::vector<double> trace;  // best value after each iteration
};

// Standard reflection / expansion / contraction / shrink coefficients.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace sglab::variational
