#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sglab/cascade/cascade.hpp"
#include "sglab/cascade/field.hpp"
#include "sglab/core/ks_test.hpp"

namespace sglab::cascade {

// Weight modifier e^{psi(eta)} with a known Lipschitz bound.
struct Psi {
  std::string name;
  std::function<double(double)> f;
  double lipschitz = 0.0;

  static Psi log_cosh(double beta, double h = 0.0);
  static Psi linear(double a);
  static Psi sigmoid(double a);  // a / (1 + e^{-y})
  static Psi constant(double c);
  static Psi custom(std::string name, std::function<double(double)> f, double lipschitz);
  // "log-cosh:beta[:h]", "linear:a", "sigmoid:a", "const:c"
  static Psi parse(const std::string& text);
};

// Largest finite-difference slope on a uniform grid over [lo, hi].
double lipschitz_on_grid(const std::function<double(double)>& f, double lo, double hi, std::size_t n = 4001);

// y -> (1/x) ln E exp(x psi(y + sqrt(v) z)); x = 0 gives E psi(y + sqrt(v) z).
std::function<double(double)> cole_hopf_step(std::function<double(double)> psi, double x, double variance,
                                             int order = 60);

// Normalized weights after xi_a -> e^{psi(eta_a)} xi_a, leaf order. The
// field is the overlap field truncated at t.
struct EvolvedWeights {
  std::vector<double> leaves;
  std::vector<double> dust;
};

EvolvedWeights evolve_cascade(const Cascade& c, const Psi& psi, RandomStream& rng, double t = 1.0);

// The n largest leaf weights of a normalized weight vector, descending.
std::vector<double> top_weights(std::vector<double> w, std::size_t n);

struct CascadeQsReport {
  std::vector<KsResult> per_rank;
  double combined_p = 1.0;
  bool pass = false;
};

// Rank by rank KS between evolved cascades and fresh ones built with
// `reference` (the same parameters unless given; a different x is the
// negative control).
CascadeQsReport cascade_quasi_stationarity(const OrderParameter& params, std::size_t m, const Psi& psi,
                                           std::size_t top_n, std::size_t trials, std::uint64_t seed,
                                           double t = 1.0,
                                           const std::optional<OrderParameter>& reference = std::nullopt);

}  // namespace sglab::cascade
