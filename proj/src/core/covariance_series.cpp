#include "sglab/core/covariance_series.hpp"

#include <cmath>
#include <string>

#include "sglab/core/error.hpp"

namespace sglab {

CovarianceSeries::CovarianceSeries(std::map<int, double> coeffs) {
  double total = 0.0;
  for (auto [r, c] : coeffs) {
    require(r >= 1, "covariance series: degrees start at 1");
    require(r <= 64, "covariance series: degree above 64 not supported");
    require(std::isfinite(c) && c >= 0.0, "covariance series: coefficients must be nonnegative");
    if (c > 0.0) coeffs_[r] = c;
    total += c;
  }
  require(!coeffs_.empty(), "covariance series: no positive coefficient");
  require(std::fabs(total - 1.0) <= 1e-12, "covariance series: coefficients must sum to 1");
}

CovarianceValue CovarianceSeries::eval(double q) const {
  require(q >= -1.0 && q <= 1.0, "covariance series: q out of [-1, 1]");
  double f = 0.0, fp = 0.0;
  for (auto [r, c] : coeffs_) {
    const double qr1 = std::pow(q, r - 1);
    f += c * qr1 * q;
    fp += c * r * qr1;
  }
  return {f, fp, q * fp - f};
}

double CovarianceSeries::fsecond(double q) const {
  double s = 0.0;
  for (auto [r, c] : coeffs_)
    if (r >= 2) s += c * r * (r - 1) * std::pow(q, r - 2);
  return s;
}

bool CovarianceSeries::is_convex(int grid) const {
  bool even = true;
  for (auto [r, c] : coeffs_)
    if (r % 2) even = false;
  if (even) return true;
  for (int i = 0; i < grid; ++i) {
    const double q = -1.0 + 2.0 * i / (grid - 1);
    if (fsecond(q) < -1e-14) return false;
  }
  return true;
}

nlohmann::json CovarianceSeries::to_json() const {
  nlohmann::json c = nlohmann::json::object();
  for (auto [r, v] : coeffs_) c[std::to_string(r)] = v;
  return {{"coeffs", c}};
}

CovarianceSeries CovarianceSeries::from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("coeffs") && j.size() == 1,
          "covariance JSON must be {\"coeffs\": {...}}");
  const auto& c = j.at("coeffs");
  require(c.is_object(), "covariance JSON: 'coeffs' must be an object");
  std::map<int, double> m;
  for (auto it = c.begin(); it != c.end(); ++it) {
    std::size_t used = 0;
    int r = 0;
    try {
      r = std::stoi(it.key(), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == it.key().size(), "covariance JSON: bad degree '" + it.key() + "'");
    require(it.value().is_number(), "covariance JSON: coefficient must be a number");
    m[r] = it.value().get<double>();
  }
  return CovarianceSeries(std::move(m));
}

}  // namespace sglab
