#include "sglab/gaussian/family.hpp"

#include "sglab/core/error.hpp"

namespace sglab::gaussian {

GaussianFamily::GaussianFamily(Matrix covariance) : n_(covariance.rows()), fixed_(std::move(covariance)) {
  require(fixed_.rows() == fixed_.cols(), "covariance must be square");
}

GaussianFamily::GaussianFamily(MatrixPath covariance, MatrixPath derivative)
    : path_(std::move(covariance)), dpath_(std::move(derivative)) {
  require(static_cast<bool>(path_), "covariance path is empty");
  const Matrix c = path_(0.5);
  require(c.rows() == c.cols(), "covariance must be square");
  n_ = c.rows();
}

GaussianFamily GaussianFamily::linear_path(const Matrix& c0, const Matrix& c1) {
  require(c0.rows() == c1.rows() && c0.cols() == c1.cols(), "linear path: shape mismatch");
  return GaussianFamily(
      [c0, c1](double t) {
        Matrix c(c0.rows(), c0.cols());
        for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = (1.0 - t) * c0.data()[i] + t * c1.data()[i];
        return c;
      },
      [c0, c1](double) {
        Matrix c(c0.rows(), c0.cols());
        for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] = c1.data()[i] - c0.data()[i];
        return c;
      });
}

Matrix GaussianFamily::covariance(double t) const { return path_ ? path_(t) : fixed_; }

Matrix GaussianFamily::derivative(double t) const {
  if (!path_) return Matrix(n_, n_);
  if (dpath_) return dpath_(t);
  const double h = 1e-3;
  Matrix a = path_(t + h), b = path_(t - h);
  for (std::size_t i = 0; i < a.data().size(); ++i) a.data()[i] = (a.data()[i] - b.data()[i]) / (2.0 * h);
  return a;
}

GaussianSampler::GaussianSampler(const Matrix& covariance) : factor_(pivoted_cholesky(covariance)) {}

std::vector<double> GaussianSampler::sample(RandomStream& rng) const {
  std::vector<double> z, out;
  sample(rng, z, out);
  return out;
}

void GaussianSampler::sample(RandomStream& rng, std::vector<double>& z, std::vector<double>& out) const {
  z.resize(factor_.rank);
  for (auto& v : z) v = rng.normal();
  out.resize(factor_.n);
  factor_.apply(z.data(), out.data());
}

std::vector<double> sample_gaussian_family(const GaussianFamily& family, RandomStream& rng, double t) {
  return GaussianSampler(family.covariance(t)).sample(rng);
}

}  // namespace sglab::gaussian
