#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace sglab {

// SplitMix64 finalizer. Used as the fixed hash for stream derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Child seed for task `index` under `parent`. Depends only on the pair, so
// task i draws the same stream whatever the scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ull));
}

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key) noexcept;

// Root seed plus the derivation rule. Every stochastic entry point in the
// library takes one of these (or a RandomStream derived from it).
struct SeedSpec {
  std::uint64_t root_seed = 0;

  constexpr std::uint64_t child(std::uint64_t task_index) const noexcept {
    return derive_seed(root_seed, task_index);
  }
};

// Counter-based random stream. The state is (key, counter); draws are pure
// functions of both, and `split` yields independent child streams.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key = 0) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  std::uint64_t key() const noexcept { return key_; }

  RandomStream split(std::uint64_t index) const noexcept {
    return RandomStream(derive_seed(key_, index));
  }

  result_type operator()() noexcept;

  // Uniform on the open interval (0, 1).
  double uniform() noexcept;
  // Standard normal (Box-Muller on two uniforms; second value cached).
  double normal() noexcept;
  // Unit-rate exponential.
  double exponential() noexcept;

  // Standard normal addressed by (key, index); does not advance any stream.
  static double normal_at(std::uint64_t key, std::uint64_t index) noexcept;

 private:
  void refill() noexcept;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int available_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sglab
