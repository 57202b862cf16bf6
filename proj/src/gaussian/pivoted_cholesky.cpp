#include "sglab/gaussian/pivoted_cholesky.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"

namespace sglab::gaussian {

void CholeskyFactor::apply(const double* z, double* out) const {
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = L.row(i);
    double s = 0.0;
    for (std::size_t r = 0; r < rank; ++r) s += row[r] * z[r];
    out[i] = s;
  }
}

std::vector<double> CholeskyFactor::apply(const std::vector<double>& z) const {
  require(z.size() >= rank, "cholesky apply: too few normals");
  std::vector<double> out(n);
  apply(z.data(), out.data());
  return out;
}

CholeskyFactor pivoted_cholesky(const Matrix& c, double rel_tol) {
  require(c.rows() == c.cols(), "covariance must be square");
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(std::fabs(c(i, j) - c(j, i)) <= 1e-12 * (1.0 + std::fabs(c(i, j))),
              "covariance must be symmetric");
  return pivoted_cholesky(
      c.rows(), [&c](std::size_t i, std::size_t j) { return c(i, j); }, rel_tol);
}

CholeskyFactor pivoted_cholesky(std::size_t n, const std::function<double(std::size_t, std::size_t)>& entry,
                                double rel_tol, std::size_t max_rank) {
  CholeskyFactor out;
  out.n = n;
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = entry(i, i);
    if (!std::isfinite(d[i])) throw NumericalError("covariance has a nonfinite diagonal entry");
    out.trace += d[i];
  }
  const double tol = rel_tol * std::max(out.trace, 0.0);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::vector<double>> rows(n);  // rows[i][r] = L(i, r)

  std::size_t r = 0;
  for (; r < n; ++r) {
    std::size_t best = r;
    for (std::size_t a = r + 1; a < n; ++a)
      if (d[perm[a]] > d[perm[best]]) best = a;
    for (std::size_t a = r; a < n; ++a) {
      if (d[perm[a]] < -tol)
        throw NumericalError("covariance is not positive semidefinite: pivot " + std::to_string(perm[a]) +
                             " has residual variance " + format_double(d[perm[a]]));
    }
    if (d[perm[best]] <= tol || r >= max_rank) break;
    std::swap(perm[r], perm[best]);
    const std::size_t p = perm[r];
    const double piv = std::sqrt(d[p]);
    const std::vector<double>& rp = rows[p];
    for (std::size_t a = r + 1; a < n; ++a) {
      const std::size_t i = perm[a];
      const std::vector<double>& ri = rows[i];
      double s = entry(i, p);
      for (std::size_t l = 0; l < r; ++l) s -= ri[l] * rp[l];
      const double v = s / piv;
      rows[i].push_back(v);
      d[i] -= v * v;
    }
    rows[p].push_back(piv);
    d[p] = 0.0;
  }
  out.rank = r;
  out.pivots = perm;
  out.L = Matrix(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < rows[i].size() && l < r; ++l) out.L(i, l) = rows[i][l];
  return out;
}

CholeskyFactor cholesky_with_order(const Matrix& c, const std::vector<std::size_t>& pivots, std::size_t rank) {
  const std::size_t n = c.rows();
  require(pivots.size() == n && rank <= n, "cholesky_with_order: bad pivot order");
  CholeskyFactor out;
  out.n = n;
  out.rank = rank;
  out.pivots = pivots;
  out.L = Matrix(n, rank);
  for (std::size_t i = 0; i < n; ++i) out.trace += c(i, i);
  for (std::size_t r = 0; r < rank; ++r) {
    const std::size_t p = pivots[r];
    double dp = c(p, p);
    for (std::size_t l = 0; l < r; ++l) dp -= out.L(p, l) * out.L(p, l);
    if (!(dp > 0.0)) throw NumericalError("cholesky_with_order: nonpositive pivot " + std::to_string(p));
    const double piv = std::sqrt(dp);
    out.L(p, r) = piv;
    for (std::size_t a = r + 1; a < n; ++a) {
      const std::size_t i = pivots[a];
      double s = c(i, p);
      for (std::size_t l = 0; l < r; ++l) s -= out.L(i, l) * out.L(p, l);
      out.L(i, r) = s / piv;
    }
  }
  return out;
}

}  // namespace sglab::gaussian
