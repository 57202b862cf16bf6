#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace sglab {

struct SuperadditiveReport {
  std::vector<double> ratio;        // Q_N / N, N = 1..L
  std::vector<double> running_sup;  // max_{n <= N} Q_n / n
  std::vector<double> incremental;  // (Q_{N+M} - Q_N) / M, N = 1..L-M
  double sup_estimate = 0.0;
  double incremental_estimate = 0.0;  // last incremental value
  std::size_t violation_count = 0;
  // first (N, M) with Q_N + Q_M > Q_{N+M}, in lexicographic order
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
  double worst_violation = 0.0;
  bool ok() const noexcept { return violation_count == 0; }
};

// values[n-1] = Q_n for n = 1..L. `tolerance` absorbs rounding in the
// pairwise check (absolute, scaled by max |Q|).
SuperadditiveReport superadditive_limit_check(const std::vector<double>& values, std::size_t window,
                                              double tolerance = 1e-12);

// Built-in sequences used by the CLI.
std::vector<double> tabulate_sequence(const std::function<double(std::size_t)>& q, std::size_t length);

}  // namespace sglab
