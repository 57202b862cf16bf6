#include "sglab/rost/rost_sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sglab/core/error.hpp"
#include "sglab/gaussian/pivoted_cholesky.hpp"

namespace sglab::rost {

std::string source_name(Source s) {
  switch (s) {
    case Source::cascade: return "cascade";
    case Source::sk_gibbs: return "sk_gibbs";
    case Source::custom: return "custom";
  }
  return "custom";
}

namespace {

std::vector<std::size_t> descending_order(const std::vector<double>& w) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return order;
}

}  // namespace

RostSample RostSample::custom(std::vector<double> weights, Matrix overlaps) {
  require(!weights.empty(), "ROSt needs at least one state");
  require(overlaps.rows() == weights.size() && overlaps.cols() == weights.size(),
          "ROSt overlap matrix must be square with one row per weight");
  const auto order = descending_order(weights);
  RostSample r;
  r.source_ = Source::custom;
  r.kernel_ = Kernel::dense;
  r.weights_.resize(weights.size());
  r.dense_ = Matrix(weights.size(), weights.size());
  for (std::size_t a = 0; a < order.size(); ++a) {
    r.weights_[a] = weights[order[a]];
    for (std::size_t b = 0; b < order.size(); ++b) r.dense_(a, b) = overlaps(order[a], order[b]);
  }
  r.validate();
  return r;
}

RostSample RostSample::gram(std::vector<double> weights, Matrix features, Source source) {
  require(!weights.empty() && features.rows() == weights.size(), "ROSt needs one feature row per weight");
  const auto order = descending_order(weights);
  RostSample r;
  r.source_ = source;
  r.kernel_ = Kernel::gram;
  r.weights_.resize(weights.size());
  r.features_ = Matrix(features.rows(), features.cols());
  for (std::size_t a = 0; a < order.size(); ++a) {
    r.weights_[a] = weights[order[a]];
    std::copy(features.row(order[a]), features.row(order[a]) + features.cols(), r.features_.row(a));
  }
  r.validate();
  return r;
}

RostSample RostSample::ultrametric(std::shared_ptr<const cascade::Cascade> c) {
  require(c != nullptr && c->leaves() > 0, "ROSt needs a built cascade");
  RostSample r;
  r.source_ = Source::cascade;
  r.kernel_ = Kernel::ultrametric;
  r.leaf_ = descending_order(c->leaf_weights);
  r.weights_.resize(r.leaf_.size());
  for (std::size_t a = 0; a < r.leaf_.size(); ++a) r.weights_[a] = c->leaf_weights[r.leaf_[a]];
  r.cascade_ = std::move(c);
  r.validate();
  return r;
}

double RostSample::overlap(std::size_t a, std::size_t b) const {
  switch (kernel_) {
    case Kernel::dense: return dense_(a, b);
    case Kernel::gram: {
      const double* ra = features_.row(a);
      const double* rb = features_.row(b);
      double s = 0.0;
      for (std::size_t i = 0; i < features_.cols(); ++i) s += ra[i] * rb[i];
      return s;
    }
    case Kernel::ultrametric: return cascade::overlap_kernel(*cascade_, leaf_[a], leaf_[b]);
  }
  return 0.0;
}

Matrix RostSample::overlap_matrix(std::size_t n) const {
  require(n <= size(), "overlap block larger than the ROSt");
  Matrix q(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b <= a; ++b) q(a, b) = q(b, a) = a == b ? 1.0 : overlap(a, b);
  if (kernel_ == Kernel::dense)
    for (std::size_t a = 0; a < n; ++a) q(a, a) = dense_(a, a);
  return q;
}

void RostSample::validate(double tol) const {
  double sum = 0.0;
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    require(std::isfinite(weights_[a]) && weights_[a] >= 0.0, "ROSt weights must be finite and nonnegative");
    require(a == 0 || weights_[a] <= weights_[a - 1], "ROSt weights must be stored in descending order");
    sum += weights_[a];
  }
  require(sum > 0.0 && std::isfinite(sum), "ROSt weights must have a finite positive sum");
  switch (kernel_) {
    case Kernel::dense: {
      const std::size_t n = dense_.rows();
      for (std::size_t a = 0; a < n; ++a) {
        require(std::fabs(dense_(a, a) - 1.0) <= tol, "ROSt overlaps must have a unit diagonal");
        for (std::size_t b = 0; b < a; ++b) {
          require(std::fabs(dense_(a, b) - dense_(b, a)) <= tol, "ROSt overlap matrix must be symmetric");
          require(std::fabs(dense_(a, b)) <= 1.0 + tol, "ROSt overlaps must satisfy |q| <= 1");
        }
      }
      try {
        gaussian::pivoted_cholesky(dense_, tol);
      } catch (const NumericalError&) {
        throw ValidationError("ROSt overlap matrix is not positive semidefinite");
      }
      break;
    }
    case Kernel::gram:
      for (std::size_t a = 0; a < features_.rows(); ++a) {
        double s = 0.0;
        for (std::size_t i = 0; i < features_.cols(); ++i) s += features_(a, i) * features_(a, i);
        require(std::fabs(s - 1.0) <= tol, "ROSt feature rows must have unit norm");
      }
      break;
    case Kernel::ultrametric:
      break;  // overlaps lie in [q_1, 1] and nest, PSD by construction
  }
}

RostSample rost_from_cascade(const cascade::Cascade& c) {
  return RostSample::ultrametric(std::make_shared<const cascade::Cascade>(c));
}

RostSample rost_from_sk_gibbs(const sk::DisorderSample& d) {
  const std::size_t n = d.size();
  require(n >= 1 && n <= kGibbsGuard, "Gibbs ROSt lists 2^N states; N must be at most 16");
  require(d.realized(), "general-variant disorder must be realized first");
  const std::size_t states = std::size_t{1} << n;
  std::vector<double> e(states);
  Matrix features(states, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  double top = -INFINITY;
  for (std::size_t b = 0; b < states; ++b) {
    const SpinConfig s = SpinConfig::from_bits(b, n);
    e[b] = -d.beta() * hamiltonian(d, s);
    top = std::max(top, e[b]);
    for (std::size_t i = 0; i < n; ++i) features(b, i) = s[i] * scale;
  }
  for (auto& v : e) v = std::exp(v - top);
  return RostSample::gram(std::move(e), std::move(features), Source::sk_gibbs);
}

}  // namespace sglab::rost
