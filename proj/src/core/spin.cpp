#include "sglab/core/spin.hpp"

#include "sglab/core/error.hpp"

namespace sglab {

SpinConfig::SpinConfig(std::vector<int> spins) : spins_(std::move(spins)) {
  require(!spins_.empty(), "spin configuration must have at least one spin");
  for (int s : spins_) require(s == 1 || s == -1, "spins must be +1 or -1");
}

SpinConfig SpinConfig::ones(std::size_t n) { return SpinConfig(std::vector<int>(n, 1)); }

SpinConfig SpinConfig::from_bits(std::uint64_t bits, std::size_t n) {
  std::vector<int> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = (bits >> i) & 1u ? -1 : 1;
  return SpinConfig(std::move(s));
}

SpinConfig SpinConfig::flipped() const {
  std::vector<int> s(spins_);
  for (int& v : s) v = -v;
  return SpinConfig(std::move(s));
}

double overlap(const SpinConfig& a, const SpinConfig& b) {
  require(a.size() == b.size(), "overlap: length mismatch");
  long dot = 0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return static_cast<double>(dot) / static_cast<double>(a.size());
}

}  // namespace sglab
