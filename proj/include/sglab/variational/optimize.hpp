#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sglab/core/order_parameter.hpp"
#include "sglab/parisi/solver.hpp"

namespace sglab::variational {

inline constexpr std::size_t kMaxSteps = 3;

struct TracePoint {
  std::size_t k = 0;
  std::size_t restart = 0;
  std::size_t iteration = 0;
  double value = 0.0;  // best value so far in this restart
};

struct VariationalResult {
  std::size_t k = 0;
  OrderParameter params;  // normalized; may have fewer than k levels
  double value = 0.0;
  bool converged = false;    // some restart met the simplex tolerance
  bool stagnated = false;    // no restart did; best-so-far returned
  bool from_smaller_k = false;  // a smaller family matched or beat every k-step candidate
  std::vector<double> per_k;    // best value for each j <= k
  std::vector<TracePoint> trace;

  nlohmann::json to_json() const;
};

struct OptimizeOptions {
  std::size_t restarts = 8;
  double tolerance = 1e-6;
  std::size_t max_iterations = 4000;
  parisi::SolverSettings settings;
};

// Logistic-increment encoding: 2k unconstrained reals map to
// 0 < x_1 < ... < x_k < 1 and 0 < q_1 < ... < q_k < 1.
OrderParameter decode(const std::vector<double>& theta, std::size_t k);
std::vector<double> encode(const std::vector<double>& x, const std::vector<double>& q);

// Minimizes P[x] over k-step order parameters. The j-step families are
// nested in their closure, so the result for k is the best over j <= k with
// j = 0 meaning the annealed parameter; each k is seeded from the k - 1
// optimum plus random restarts.
VariationalResult optimize(std::size_t k, double beta, double h, std::uint64_t seed,
                           const OptimizeOptions& options = {});

// Fixed point of q = E tanh^2(beta (sqrt(q) z + h)) by damped iteration.
double rs_stationary_point(double beta, double h);

// Fixed-point residual E tanh^2(beta (sqrt(q) z + h)) - q.
double rs_residual(double q, double beta, double h);

}  // namespace sglab::variational
