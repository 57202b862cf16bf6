#pragma once

#include <map>

#include <json.hpp>

namespace sglab {

struct CovarianceValue {
  double f;
  double fprime;
  double phi;  // q f'(q) - f(q)
};

// f(q) = sum_r c_r q^r with c_r >= 0 and sum c_r = 1.
class CovarianceSeries {
 public:
  explicit CovarianceSeries(std::map<int, double> coeffs);

  static CovarianceSeries sk() { return CovarianceSeries({{2, 1.0}}); }
  static CovarianceSeries pspin(int p) { return CovarianceSeries({{p, 1.0}}); }

  const std::map<int, double>& coeffs() const noexcept { return coeffs_; }
  int max_degree() const noexcept { return coeffs_.rbegin()->first; }
  bool is_sk() const noexcept { return coeffs_.size() == 1 && coeffs_.begin()->first == 2; }

  CovarianceValue eval(double q) const;
  double f(double q) const { return eval(q).f; }
  double fprime(double q) const { return eval(q).fprime; }
  double phi(double q) const { return eval(q).phi; }
  double fsecond(double q) const;

  // Even-only series are convex on [-1, 1]; otherwise scan f'' on a grid.
  bool is_convex(int grid = 2001) const;

  nlohmann::json to_json() const;
  static CovarianceSeries from_json(const nlohmann::json& j);

  bool operator==(const CovarianceSeries& other) const = default;

 private:
  std::map<int, double> coeffs_;
};

}  // namespace sglab
