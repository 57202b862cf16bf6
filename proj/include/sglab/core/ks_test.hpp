#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sglab {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_q(double lambda);

// Both use the asymptotic distribution with Stephens' small-sample correction.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);
KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

// min(1, m * min_i p_i)
double bonferroni(const std::vector<double>& p_values);

}  // namespace sglab
