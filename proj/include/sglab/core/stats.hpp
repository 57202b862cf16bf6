#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace sglab {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // standard error
  std::size_t count = 0;
};

// Welford accumulator. Fed in task-index order it is deterministic.
class RunningStats {
 public:
  void add(double v) noexcept {
    ++n_;
    const double d = v - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (v - mean_);
  }
  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double stderr_mean() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }
  Estimate estimate() const noexcept { return {mean(), stderr_mean(), n_}; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

Estimate summarize(const std::vector<double>& values);

double standard_normal_cdf(double z);

// max-shifted log(sum exp(v))
double log_sum_exp(const std::vector<double>& v);

// Streaming version with a running shift.
class LogSumExp {
 public:
  void add(double v) noexcept {
    if (v == -INFINITY) return;
    if (v <= shift_) {
      acc_ += std::exp(v - shift_);
    } else {
      acc_ = acc_ * std::exp(shift_ - v) + 1.0;
      shift_ = v;
    }
  }
  double value() const noexcept { return shift_ + std::log(acc_); }

 private:
  double shift_ = -INFINITY;
  double acc_ = 0.0;
};

// Numerically stable ln cosh.
inline double log_cosh(double u) noexcept {
  const double a = std::fabs(u);
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453;
}

}  // namespace sglab
