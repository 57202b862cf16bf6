#include "sglab/sk/ground_state.hpp"

#include <cmath>

#include "sglab/core/error.hpp"
#include "sglab/sk/jacobi.hpp"

namespace sglab::sk {

namespace {
void require_heuristic_setting(const DisorderSample& d) {
  require(d.variant() == Variant::classic, "ground-state heuristics use the classic variant");
  require(d.h() == 0.0, "ground-state heuristics assume h = 0");
}
}  // namespace

GroundStateResult greedy_ground_state(const DisorderSample& d) {
  require_heuristic_setting(d);
  const std::size_t n = d.size();
  const Matrix& j = d.couplings();
  std::vector<int> s(n, 1);
  double inter = 0.0;  // sum_{i<k} J_ik s_i s_k
  for (std::size_t i = 1; i < n; ++i) {
    double field = 0.0;
    for (std::size_t k = 0; k < i; ++k) field += j(k, i) * s[k];
    s[i] = field >= 0.0 ? 1 : -1;
    inter += std::fabs(field);
  }
  const double nn = static_cast<double>(n);
  return {SpinConfig(std::move(s)), -inter / std::sqrt(nn) / nn};
}

Matrix energy_matrix(const DisorderSample& d) {
  Matrix e = d.quadratic_form();
  for (double& v : e.data()) v *= -0.5;
  return e;
}

SpinConfig lowest_eigenvector_signs(const Matrix& m, double* lowest_value) {
  const EigenDecomposition eig = jacobi_eigen(m);
  if (lowest_value) *lowest_value = eig.values[0];
  std::vector<int> s(m.rows());
  const double* v = eig.vectors.row(0);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = v[i] < 0.0 ? -1 : 1;
  return SpinConfig(std::move(s));
}

GroundStateResult spectral_ground_state(const DisorderSample& d) {
  require_heuristic_setting(d);
  SpinConfig s = lowest_eigenvector_signs(energy_matrix(d));
  const double e = hamiltonian(d, s) / static_cast<double>(d.size());
  return {std::move(s), e};
}

}  // namespace sglab::sk
