#pragma once

#include <cstdint>
#include <vector>

namespace sglab {

// Ising configuration, entries +1/-1, length >= 1.
class SpinConfig {
 public:
  explicit SpinConfig(std::vector<int> spins);
  // All +1.
  static SpinConfig ones(std::size_t n);
  // Bit i of `bits` set means spin i is -1.
  static SpinConfig from_bits(std::uint64_t bits, std::size_t n);

  std::size_t size() const noexcept { return spins_.size(); }
  int operator[](std::size_t i) const noexcept { return spins_[i]; }
  const std::vector<int>& spins() const noexcept { return spins_; }

  SpinConfig flipped() const;

 private:
  std::vector<int> spins_;
};

// (1/N) sum_i a_i b_i
double overlap(const SpinConfig& a, const SpinConfig& b);

}  // namespace sglab
