#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sglab/core/matrix.hpp"
#include "sglab/core/stats.hpp"
#include "sglab/gaussian/family.hpp"

namespace sglab::gaussian {

struct TestFunction {
  std::function<double(const std::vector<double>&)> value;
  // Fills the Hessian. Empty means central second differences.
  std::function<void(const std::vector<double>&, Matrix&)> hessian;
};

// psi(X) = ln sum_g xi_g exp(-beta X_g)
TestFunction log_sum_exp_psi(std::vector<double> xi, double beta);
TestFunction coordinate(std::size_t i);
// x_i^2
TestFunction square(std::size_t i);
// x_i^2 x_j^2
TestFunction square_product(std::size_t i, std::size_t j);

Matrix hessian_of(const TestFunction& psi, const std::vector<double>& x);

struct ResidualReport {
  double lhs = 0.0;       // d/dt E psi
  double rhs = 0.0;       // (1/2) sum dC E d2psi
  double residual = 0.0;  // |lhs - rhs|
  double se = 0.0;        // paired standard error of lhs - rhs (0 for quadrature)
  double lhs_se = 0.0;
  double rhs_se = 0.0;
  std::size_t samples = 0;
};

// Monte Carlo with common random numbers: for each z, the central
// difference of psi(L(t +- h) z) and the Hessian term at L(t) z.
ResidualReport differentiation_identity_residual(const GaussianFamily& family, const TestFunction& psi,
                                                 double t, std::uint64_t seed, std::size_t samples,
                                                 double h = 1e-3);

// Tensor Gauss-Hermite on the factor rank (<= 2), with a Richardson
// extrapolated difference quotient for the left side.
ResidualReport quadrature_identity_residual(const GaussianFamily& family, const TestFunction& psi, double t,
                                            int order = 80, double h = 1e-3);

// E psi(X) under covariance c by tensor Gauss-Hermite; rank must be <= 2.
double quadrature_expectation(const Matrix& c, const TestFunction& psi, int order = 80);

struct InterpolationTerms {
  Estimate single;      // E^(1)(dC_gg)
  Estimate pair;        // E^(2)(dC_gg')
  Estimate derivative;  // beta^2/2 (single - pair), paired
  std::vector<std::string> warnings;
};

// Weighted replica form of d/dt E psi for psi = ln sum xi e^{-beta X}.
// Weights are truncated at relative tail 1e-8 first.
InterpolationTerms interpolation_derivative(const std::vector<double>& xi, double beta,
                                            const GaussianFamily& family, double t, std::uint64_t seed,
                                            std::size_t samples);

// Integral of the derivative over [t1, t2] by Gauss-Legendre in t.
Estimate interpolation_integral(const std::vector<double>& xi, double beta, const GaussianFamily& family,
                                double t1, double t2, int nodes, std::uint64_t seed, std::size_t samples);

struct ComparisonReport {
  Estimate difference;  // E psi(X) - E psi(Y), paired
  double abs_difference = 0.0;
  double max_cov_gap = 0.0;
  double bound = 0.0;
  bool sharpened = false;  // beta^2 / 2 used
  bool holds = false;      // |diff| <= bound + 3 se
};

ComparisonReport family_comparison_bound(const Matrix& cx, const Matrix& cy, const std::vector<double>& xi,
                                         double beta, std::uint64_t seed, std::size_t samples);

}  // namespace sglab::gaussian
