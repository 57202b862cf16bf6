#pragma once

#include <functional>
#include <vector>

#include "sglab/core/matrix.hpp"
#include "sglab/core/rng.hpp"
#include "sglab/gaussian/pivoted_cholesky.hpp"

namespace sglab::gaussian {

// Centered Gaussian vector with covariance C, or a path t -> C(t) with its
// derivative.
class GaussianFamily {
 public:
  using MatrixPath = std::function<Matrix(double)>;

  explicit GaussianFamily(Matrix covariance);
  // If `derivative` is empty it falls back to a central difference, h = 1e-3.
  GaussianFamily(MatrixPath covariance, MatrixPath derivative);
  // C(t) = (1 - t) c0 + t c1
  static GaussianFamily linear_path(const Matrix& c0, const Matrix& c1);

  std::size_t size() const noexcept { return n_; }
  bool has_path() const noexcept { return static_cast<bool>(path_); }
  Matrix covariance(double t = 0.0) const;
  Matrix derivative(double t) const;

 private:
  std::size_t n_ = 0;
  Matrix fixed_;
  MatrixPath path_;
  MatrixPath dpath_;
};

// Draws X = L z with z iid standard normal.
class GaussianSampler {
 public:
  explicit GaussianSampler(const Matrix& covariance);
  explicit GaussianSampler(CholeskyFactor factor) : factor_(std::move(factor)) {}

  std::size_t size() const noexcept { return factor_.n; }
  std::size_t rank() const noexcept { return factor_.rank; }
  const CholeskyFactor& factor() const noexcept { return factor_; }

  std::vector<double> sample(RandomStream& rng) const;
  void sample(RandomStream& rng, std::vector<double>& z, std::vector<double>& out) const;

 private:
  CholeskyFactor factor_;
};

std::vector<double> sample_gaussian_family(const GaussianFamily& family, RandomStream& rng, double t = 0.0);

}  // namespace sglab::gaussian
