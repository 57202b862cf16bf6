#pragma once

#include <string>

#include <json.hpp>

#include "sglab/core/rng.hpp"

namespace sglab::rem {

// Positive multiplicative increments with closed-form <g^x> and tilt.
class IncrementLaw {
 public:
  enum class Kind { point_mass, lognormal, two_point };

  static IncrementLaw point_mass(double c);
  // ln g ~ N(mu, s^2)
  static IncrementLaw lognormal(double s, double mu = 0.0);
  // g = a with probability p, b otherwise
  static IncrementLaw two_point(double a, double b, double p = 0.5);
  // "point:c", "lognormal:s[:mu]", "two-point:a:b[:p]"
  static IncrementLaw parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double sample(RandomStream& rng) const;
  // <g^x>
  double moment(double x) const;
  // <g^x>^{1/x}
  double correction(double x) const;
  // g~(dg) = g^x g(dg) / <g^x>
  IncrementLaw tilted(double x) const;
  double cdf(double v) const;
  bool is_discrete() const noexcept { return kind_ != Kind::lognormal; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double p() const noexcept { return p_; }

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  Kind kind_ = Kind::point_mass;
  double a_ = 1.0;  // c | s | a
  double b_ = 0.0;  // - | mu | b
  double p_ = 1.0;
};

}  // namespace sglab::rem
