#pragma once

#include <vector>

#include "sglab/core/matrix.hpp"

namespace sglab::sk {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // row i is the unit eigenvector for values[i]
  int sweeps = 0;
  double off_norm = 0.0;  // final off-diagonal Frobenius norm
};

// Cyclic Jacobi for a dense symmetric matrix. Stops when the off-diagonal
// Frobenius norm is below rel_tol * ||A||_F; NumericalError after
// max_sweeps.
EigenDecomposition jacobi_eigen(Matrix a, double rel_tol = 1e-10, int max_sweeps = 60);

}  // namespace sglab::sk
