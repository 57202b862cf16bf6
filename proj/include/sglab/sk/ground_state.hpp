#pragma once

#include "sglab/core/matrix.hpp"
#include "sglab/core/spin.hpp"
#include "sglab/sk/disorder.hpp"

namespace sglab::sk {

struct GroundStateResult {
  SpinConfig spins;
  double energy_per_spin;  // H / N
};

// Sequential choice: s_1 = +1, then each spin aligns with the field of
// the spins already placed, s_i = sign(sum_{j<i} J_ji s_j), which lowers
// H at every step. Zero field gives +1.
GroundStateResult greedy_ground_state(const DisorderSample& d);

// Signs of the lowest eigenvector of the energy matrix E with
// H(s) = s^T E s (classic, h = 0). Zero components give +1.
GroundStateResult spectral_ground_state(const DisorderSample& d);

// The energy matrix itself, E = -B / 2.
Matrix energy_matrix(const DisorderSample& d);

// Sign vector of the lowest eigenvector of an arbitrary symmetric matrix.
SpinConfig lowest_eigenvector_signs(const Matrix& m, double* lowest_value = nullptr);

}  // namespace sglab::sk
