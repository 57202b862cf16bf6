#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sglab/core/covariance_series.hpp"
#include "sglab/core/matrix.hpp"
#include "sglab/core/spin.hpp"

namespace sglab::sk {

// classic:  -H = N^{-1/2} sum_{i<j} J_ij s_i s_j + h sum s_i
// diagonal: -H = (2N)^{-1/2} sum_{i,j} J_ij s_i s_j + h sum s_i
// general:  -H = K(s) + h sum s_i, K centered with E K K' = (N/2) f(q)
enum class Variant { classic, diagonal, general };

Variant parse_variant(const std::string& name);
std::string variant_name(Variant v);

inline constexpr std::size_t kEnumerationGuard = 24;
inline constexpr std::size_t kGeneralGuard = 12;

class DisorderSample {
 public:
  // Couplings J_ij come from counter (i, j) of the key's stream, so the
  // leading N x N block is the same for every larger system drawn with the
  // same key.
  static DisorderSample draw(std::size_t n, Variant variant, double beta, double h, std::uint64_t key,
                             std::optional<CovarianceSeries> f = std::nullopt);
  // Explicit couplings (classic or diagonal).
  static DisorderSample from_couplings(Matrix j, Variant variant, double beta, double h);
  // General-f sample without a realized process; realize() draws K.
  static DisorderSample general(std::size_t n, CovarianceSeries f, double beta, double h);

  void realize(std::uint64_t key);

  std::size_t size() const noexcept { return n_; }
  Variant variant() const noexcept { return variant_; }
  double beta() const noexcept { return beta_; }
  double h() const noexcept { return h_; }
  const Matrix& couplings() const noexcept { return j_; }
  const std::optional<CovarianceSeries>& series() const noexcept { return f_; }
  bool realized() const noexcept { return variant_ != Variant::general || !k_.empty(); }
  // K indexed by configuration bits (bit i set means spin i is -1).
  const std::vector<double>& process() const noexcept { return k_; }

  // -H = constant + (1/2) s^T B s + h sum s, B symmetric with zero diagonal.
  // Not available for the general variant.
  Matrix quadratic_form() const;
  double constant() const;

  DisorderSample with_beta(double beta) const;

 private:
  std::size_t n_ = 0;
  Variant variant_ = Variant::classic;
  double beta_ = 1.0;
  double h_ = 0.0;
  Matrix j_;
  std::optional<CovarianceSeries> f_;
  std::vector<double> k_;
};

// Energy H(s) (not -H).
double hamiltonian(const DisorderSample& d, const SpinConfig& s);

// Full iid N(0,1) matrix for the key, entry (i, j) from counter (i << 32 | j).
Matrix coupling_matrix(std::size_t n, std::uint64_t key);

}  // namespace sglab::sk
