#pragma once

#include <stdexcept>
#include <string>

namespace sglab {

// Bad input: malformed parameters, violated preconditions, guard limits.
// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed (non-convergence, non-PSD beyond tolerance,
// nonfinite values). The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

}  // namespace sglab
