#pragma once

#include <vector>

namespace sglab::gaussian {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// sum_i w_i g(z_i) ~= E g(Z), Z standard normal. Weights sum to 1.
// Rules are cached per order.
const QuadratureRule& gauss_hermite(int order);

// Rule on [a, b] for the Lebesgue measure.
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace sglab::gaussian
