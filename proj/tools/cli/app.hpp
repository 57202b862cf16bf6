#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli/plot.hpp"
#include "sglab/core/covariance_series.hpp"
#include "sglab/core/order_parameter.hpp"

namespace sglab::cli {

struct Param {
  std::string name;
  nlohmann::json fallback;  // its JSON type is the parameter's type
  std::string help;
};

// Resolved parameters of one run.
class Params {
 public:
  Params(nlohmann::json values, std::uint64_t seed) : values_(std::move(values)), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  double num(const std::string& key) const;
  std::size_t count(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::string str(const std::string& key) const;

  std::vector<double> nums(const std::string& key) const;     // "0.5,1,2"
  std::vector<std::size_t> counts(const std::string& key) const;
  std::vector<OrderParameter> orders(const std::string& key) const;  // "a:b,c:d;annealed"
  CovarianceSeries series(const std::string& key) const;   // "", "sk", "pspin:p", "2:0.5,4:0.5"

 private:
  nlohmann::json values_;
  std::uint64_t seed_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Output {
  nlohmann::json result;
  Table table;
  std::vector<Series> plot;
  std::string x_label = "x", y_label = "y";
  bool pass = true;  // the command's own checks, echoed as "pass"
};

struct Command {
  std::string name;
  std::string description;
  std::vector<Param> params;
  std::function<Output(const Params&)> run;
};

const std::vector<Command>& commands();

// Full front-end: returns the process exit code (0, 2 validation, 3 numerical).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sglab::cli
