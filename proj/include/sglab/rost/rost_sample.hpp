#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "sglab/cascade/cascade.hpp"
#include "sglab/core/matrix.hpp"
#include "sglab/core/spin.hpp"
#include "sglab/sk/disorder.hpp"

namespace sglab::rost {

enum class Source { cascade, sk_gibbs, custom };
std::string source_name(Source s);

// dense Gaussian sampling is capped at this many states
inline constexpr std::size_t kStateGuard = 4000;
// Gibbs ROSts list every configuration
inline constexpr std::size_t kGibbsGuard = 16;

// Weights in descending order plus an overlap kernel. The kernel is stored
// in whichever form the source provides:
//   dense        explicit matrix (custom ROSts)
//   gram         rows r_a with q_ab = <r_a, r_b> (Gibbs states, r = s / sqrt N)
//   ultrametric  a cascade and the leaf behind each state
class RostSample {
 public:
  enum class Kernel { dense, gram, ultrametric };

  static RostSample custom(std::vector<double> weights, Matrix overlaps);
  static RostSample gram(std::vector<double> weights, Matrix features, Source source = Source::sk_gibbs);
  static RostSample ultrametric(std::shared_ptr<const cascade::Cascade> c);

  Source source() const noexcept { return source_; }
  Kernel kernel() const noexcept { return kernel_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double overlap(std::size_t a, std::size_t b) const;
  // leading n x n block of the overlap matrix
  Matrix overlap_matrix(std::size_t n) const;

  const Matrix& dense() const noexcept { return dense_; }
  const Matrix& features() const noexcept { return features_; }
  const cascade::Cascade* cascade() const noexcept { return cascade_.get(); }
  std::size_t leaf(std::size_t state) const noexcept { return leaf_[state]; }

  // Nonnegative descending weights with a finite positive sum, unit
  // diagonal, |q| <= 1, PSD. Throws ValidationError.
  void validate(double tol = 1e-10) const;

 private:
  Source source_ = Source::custom;
  Kernel kernel_ = Kernel::dense;
  std::vector<double> weights_;
  Matrix dense_;
  Matrix features_;
  std::shared_ptr<const cascade::Cascade> cascade_;
  std::vector<std::size_t> leaf_;
};

RostSample rost_from_cascade(const cascade::Cascade& c);
// Gibbs weights e^{-beta H} of all 2^N configurations, overlaps s.s'/N.
RostSample rost_from_sk_gibbs(const sk::DisorderSample& d);

}  // namespace sglab::rost
