#include "sglab/rem/increment_law.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/stats.hpp"

namespace sglab::rem {

IncrementLaw IncrementLaw::point_mass(double c) {
  require(c > 0.0 && std::isfinite(c), "point mass increment must be positive");
  IncrementLaw g;
  g.kind_ = Kind::point_mass;
  g.a_ = c;
  return g;
}

IncrementLaw IncrementLaw::lognormal(double s, double mu) {
  require(s > 0.0 && std::isfinite(s) && std::isfinite(mu), "lognormal increment needs s > 0");
  IncrementLaw g;
  g.kind_ = Kind::lognormal;
  g.a_ = s;
  g.b_ = mu;
  return g;
}

IncrementLaw IncrementLaw::two_point(double a, double b, double p) {
  require(a > 0.0 && b > 0.0 && std::isfinite(a) && std::isfinite(b), "two-point increments must be positive");
  require(a != b, "two-point law needs distinct values");
  require(p > 0.0 && p < 1.0, "two-point probability must lie in (0, 1)");
  IncrementLaw g;
  g.kind_ = Kind::two_point;
  g.a_ = a;
  g.b_ = b;
  g.p_ = p;
  return g;
}

IncrementLaw IncrementLaw::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  require(!parts.empty(), "empty increment law");
  const std::string& name = parts[0];
  std::vector<double> v;
  for (std::size_t i = 1; i < parts.size(); ++i) v.push_back(parse_double(parts[i]));
  if (name == "point" && v.size() == 1) return point_mass(v[0]);
  if (name == "lognormal" && (v.size() == 1 || v.size() == 2)) return lognormal(v[0], v.size() == 2 ? v[1] : 0.0);
  if (name == "two-point" && (v.size() == 2 || v.size() == 3)) return two_point(v[0], v[1], v.size() == 3 ? v[2] : 0.5);
  throw ValidationError("increment law must be point:c, lognormal:s[:mu] or two-point:a:b[:p], got '" + text + "'");
}

double IncrementLaw::sample(RandomStream& rng) const {
  switch (kind_) {
    case Kind::point_mass: return a_;
    case Kind::lognormal: return std::exp(b_ + a_ * rng.normal());
    case Kind::two_point: return rng.uniform() < p_ ? a_ : b_;
  }
  return a_;
}

double IncrementLaw::moment(double x) const {
  switch (kind_) {
    case Kind::point_mass: return std::pow(a_, x);
    case Kind::lognormal: return std::exp(x * b_ + 0.5 * x * x * a_ * a_);
    case Kind::two_point: return p_ * std::pow(a_, x) + (1.0 - p_) * std::pow(b_, x);
  }
  return 1.0;
}

double IncrementLaw::correction(double x) const { return std::pow(moment(x), 1.0 / x); }

IncrementLaw IncrementLaw::tilted(double x) const {
  switch (kind_) {
    case Kind::point_mass: return *this;
    case Kind::lognormal: return lognormal(a_, b_ + x * a_ * a_);
    case Kind::two_point: {
      const double wa = p_ * std::pow(a_, x);
      return two_point(a_, b_, wa / moment(x));
    }
  }
  return *this;
}

double IncrementLaw::cdf(double v) const {
  switch (kind_) {
    case Kind::point_mass: return v >= a_ ? 1.0 : 0.0;
    case Kind::lognormal: return v <= 0.0 ? 0.0 : standard_normal_cdf((std::log(v) - b_) / a_);
    case Kind::two_point: {
      double c = 0.0;
      if (v >= a_) c += p_;
      if (v >= b_) c += 1.0 - p_;
      return c;
    }
  }
  return 0.0;
}

std::string IncrementLaw::to_string() const {
  switch (kind_) {
    case Kind::point_mass: return "point:" + format_double(a_);
    case Kind::lognormal:
      return "lognormal:" + format_double(a_) + (b_ != 0.0 ? ":" + format_double(b_) : std::string());
    case Kind::two_point: return "two-point:" + format_double(a_) + ":" + format_double(b_) + ":" + format_double(p_);
  }
  return "?";
}

nlohmann::json IncrementLaw::to_json() const { return to_string(); }

}  // namespace sglab::rem
