#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace sglab {

// Piecewise-constant x(q): x(q) = x_i on [q_i, q_{i+1}), x = 0 below q_1,
// x(1) = 1. Levels are strictly increasing in both sequences.
//
// Two limit cases are accepted because optimizers land on them:
// q_1 = 0 (the x_0 interval is empty) and x_k = 1. The pair x = {1},
// q = {0} is the annealed parameter, x == 1 on all of [0, 1].
class OrderParameter {
 public:
  OrderParameter() = default;  // k = 0: x == 0 on [0, 1), all overlaps at 1
  OrderParameter(std::vector<double> x, std::vector<double> q);

  static OrderParameter annealed() { return OrderParameter({1.0}, {0.0}); }
  static OrderParameter replica_symmetric(double q) { return OrderParameter({1.0}, {q}); }

  // Repairs degenerate input: merges equal adjacent x, drops empty
  // intervals and levels with x_i = 0. Still rejects decreasing input.
  static OrderParameter normalized(std::vector<double> x, std::vector<double> q);

  std::size_t k() const noexcept { return x_.size(); }
  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& q() const noexcept { return q_; }
  bool is_annealed() const noexcept { return x_.size() == 1 && x_[0] == 1.0 && q_[0] == 0.0; }

  // q_{i} with q_0 = 0 and q_{k+1} = 1, i in [0, k+1]
  double q_at(std::size_t i) const noexcept;
  // x_i with x_0 = 0 and x_{k+1} = 1
  double x_at(std::size_t i) const noexcept;

  double eval(double q) const;
  // integral of q x(q) over [0, 1]
  double q_integral() const noexcept;

  nlohmann::json to_json() const;
  static OrderParameter from_json(const nlohmann::json& j);
  // "x1:q1,x2:q2", "annealed" or "zero"
  static OrderParameter parse(const std::string& text);
  std::string to_string() const;

  bool operator==(const OrderParameter& other) const = default;

 private:
  std::vector<double> x_;
  std::vector<double> q_;
};

}  // namespace sglab
