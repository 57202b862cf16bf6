#include "sglab/core/order_parameter.hpp"

#include <cmath>
#include <sstream>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"

namespace sglab {

OrderParameter::OrderParameter(std::vector<double> x, std::vector<double> q)
    : x_(std::move(x)), q_(std::move(q)) {
  require(x_.size() == q_.size(), "order parameter: x and q must have the same length");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    require(std::isfinite(x_[i]) && std::isfinite(q_[i]), "order parameter: nonfinite entry");
    require(x_[i] > 0.0 && x_[i] <= 1.0, "order parameter: x_i must lie in (0, 1]");
    require(q_[i] >= 0.0 && q_[i] < 1.0, "order parameter: q_i must lie in [0, 1)");
    if (i > 0) {
      require(x_[i] > x_[i - 1], "order parameter: x must be strictly increasing");
      require(q_[i] > q_[i - 1], "order parameter: q must be strictly increasing");
    }
  }
  if (!x_.empty()) {
    // only the top level may sit at 1
    for (std::size_t i = 0; i + 1 < x_.size(); ++i)
      require(x_[i] < 1.0, "order parameter: only x_k may equal 1");
  }
}

OrderParameter OrderParameter::normalized(std::vector<double> x, std::vector<double> q) {
  require(x.size() == q.size(), "order parameter: x and q must have the same length");
  std::vector<double> nx, nq;
  for (std::size_t i = 0; i < x.size(); ++i) {
    require(std::isfinite(x[i]) && std::isfinite(q[i]), "order parameter: nonfinite entry");
    require(x[i] >= 0.0 && x[i] <= 1.0, "order parameter: x_i must lie in [0, 1]");
    require(q[i] >= 0.0 && q[i] <= 1.0, "order parameter: q_i must lie in [0, 1]");
    if (i > 0) {
      require(x[i] >= x[i - 1], "order parameter: x must be nondecreasing");
      require(q[i] >= q[i - 1], "order parameter: q must be nondecreasing");
    }
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double upper = i + 1 < x.size() ? q[i + 1] : 1.0;
    if (q[i] >= upper) continue;  // empty interval
    if (x[i] == 0.0) continue;    // same as the x_0 level
    if (!nx.empty() && nx.back() == x[i]) continue;
    nx.push_back(x[i]);
    nq.push_back(q[i]);
  }
  return OrderParameter(std::move(nx), std::move(nq));
}

double OrderParameter::q_at(std::size_t i) const noexcept {
  if (i == 0) return 0.0;
  if (i > k()) return 1.0;
  return q_[i - 1];
}

double OrderParameter::x_at(std::size_t i) const noexcept {
  if (i == 0) return 0.0;
  if (i > k()) return 1.0;
  return x_[i - 1];
}

double OrderParameter::eval(double q) const {
  require(q >= 0.0 && q <= 1.0, "order parameter: q out of [0, 1]");
  if (q == 1.0) return 1.0;
  double v = 0.0;
  for (std::size_t i = 0; i < k(); ++i) {
    if (q >= q_[i]) v = x_[i];
  }
  return v;
}

double OrderParameter::q_integral() const noexcept {
  double s = 0.0;
  for (std::size_t i = 1; i <= k(); ++i) {
    const double lo = q_at(i), hi = q_at(i + 1);
    s += x_at(i) * (hi * hi - lo * lo) / 2.0;
  }
  return s;
}

nlohmann::json OrderParameter::to_json() const { return {{"x", x_}, {"q", q_}}; }

OrderParameter OrderParameter::from_json(const nlohmann::json& j) {
  require(j.is_object(), "order parameter JSON must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    require(it.key() == "x" || it.key() == "q", "order parameter JSON: unknown field '" + it.key() + "'");
  require(j.contains("x") && j.contains("q"), "order parameter JSON needs 'x' and 'q'");
  try {
    return OrderParameter(j.at("x").get<std::vector<double>>(), j.at("q").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("order parameter JSON: ") + e.what());
  }
}

OrderParameter OrderParameter::parse(const std::string& text) {
  std::vector<double> x, q;
  if (text.empty() || text == "zero") return OrderParameter();
  if (text == "annealed") return annealed();
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "order parameter: expected x:q pairs, got '" + item + "'");
    x.push_back(parse_double(item.substr(0, colon)));
    q.push_back(parse_double(item.substr(colon + 1)));
  }
  return OrderParameter(std::move(x), std::move(q));
}

std::string OrderParameter::to_string() const {
  if (k() == 0) return "zero";
  std::string s;
  for (std::size_t i = 0; i < k(); ++i) {
    if (i) s += ',';
    s += format_double(x_[i]) + ':' + format_double(q_[i]);
  }
  return s;
}

}  // namespace sglab
