#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

#include "sglab/core/matrix.hpp"

namespace sglab::gaussian {

// C ~= L L^T with L of shape n x rank. Column r of L is nonzero only on
// pivots[r..] in pivot order, so the factor is lower triangular after the
// permutation.
struct CholeskyFactor {
  std::size_t n = 0;
  std::size_t rank = 0;
  Matrix L;
  std::vector<std::size_t> pivots;  // first `rank` entries were used
  double trace = 0.0;

  // out = L z, z of length rank
  void apply(const double* z, double* out) const;
  std::vector<double> apply(const std::vector<double>& z) const;
};

// Stops once the largest remaining pivot is <= rel_tol * trace. A remaining
// pivot below -rel_tol * trace means C is not PSD and raises NumericalError.
CholeskyFactor pivoted_cholesky(const Matrix& c, double rel_tol = 1e-10);

// Same, with entries computed on demand (the matrix is never stored).
CholeskyFactor pivoted_cholesky(std::size_t n, const std::function<double(std::size_t, std::size_t)>& entry,
                                double rel_tol = 1e-10,
                                std::size_t max_rank = std::numeric_limits<std::size_t>::max());

// Cholesky with a pivot order fixed in advance. Used for common random
// numbers along a covariance path: the map t -> L(t) is then smooth.
CholeskyFactor cholesky_with_order(const Matrix& c, const std::vector<std::size_t>& pivots,
                                   std::size_t rank);

}  // namespace sglab::gaussian
