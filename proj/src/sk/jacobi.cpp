#include "sglab/sk/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sglab/core/error.hpp"

namespace sglab::sk {

namespace {

// Both kernels are plain elementwise updates (no reductions, no fused
// multiply-add), so the AVX2 and baseline clones give identical bits.
__attribute__((target_clones("avx2", "default"))) void rotate_rows(double* __restrict x, double* __restrict y,
                                                                   std::size_t n, double c, double s) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = x[k], b = y[k];
    x[k] = c * a - s * b;
    y[k] = s * a + c * b;
  }
}

// Applies the column rotations (p, q), q = p+1..n-1, in order, to rows
// [r0, r1). Four rows at a time keeps independent dependency chains.
__attribute__((target_clones("avx2", "default"))) void rotate_columns(double* a, std::size_t n, std::size_t p,
                                                                      const double* cs, const double* ss,
                                                                      std::size_t r0, std::size_t r1) {
  std::size_t k = r0;
  for (; k + 4 <= r1; k += 4) {
    double* w0 = a + k * n;
    double* w1 = w0 + n;
    double* w2 = w1 + n;
    double* w3 = w2 + n;
    double x0 = w0[p], x1 = w1[p], x2 = w2[p], x3 = w3[p];
    for (std::size_t q = p + 1; q < n; ++q) {
      const double c = cs[q], s = ss[q];
      const double y0 = w0[q], y1 = w1[q], y2 = w2[q], y3 = w3[q];
      w0[q] = s * x0 + c * y0;
      x0 = c * x0 - s * y0;
      w1[q] = s * x1 + c * y1;
      x1 = c * x1 - s * y1;
      w2[q] = s * x2 + c * y2;
      x2 = c * x2 - s * y2;
      w3[q] = s * x3 + c * y3;
      x3 = c * x3 - s * y3;
    }
    w0[p] = x0;
    w1[p] = x1;
    w2[p] = x2;
    w3[p] = x3;
  }
  for (; k < r1; ++k) {
    double* w = a + k * n;
    double x = w[p];
    for (std::size_t q = p + 1; q < n; ++q) {
      const double c = cs[q], s = ss[q], y = w[q];
      w[q] = s * x + c * y;
      x = c * x - s * y;
    }
    w[p] = x;
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(Matrix a, double rel_tol, int max_sweeps) {
  const std::size_t n = a.rows();
  require(n == a.cols() && n >= 1, "jacobi: matrix must be square and nonempty");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      require(a(i, j) == a(j, i), "jacobi: matrix must be exactly symmetric");
  for (double v : a.data())
    if (!std::isfinite(v)) throw NumericalError("jacobi: nonfinite matrix entry");

  double fro = 0.0;
  for (double v : a.data()) fro += v * v;
  fro = std::sqrt(fro);

  Matrix vt = Matrix::identity(n);  // rows are eigenvectors
  std::vector<double> cs(n), ss(n);
  double* m = a.data().data();
  EigenDecomposition out;
  double off = off_diagonal_norm(a);
  int sweep = 0;
  while (off > rel_tol * fro) {
    if (sweep == max_sweeps)
      throw NumericalError("jacobi: no convergence after " + std::to_string(max_sweeps) + " sweeps");
    ++sweep;
    // Row-cyclic order. Within one p, the rotation angles only need row p,
    // a_pp and a_qq, which the row updates keep exact, so the column half
    // of each similarity transform can be applied afterwards in one
    // cache-friendly pass.
    for (std::size_t p = 0; p + 1 < n; ++p) {
      double app = a(p, p);
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (apq == 0.0) {
          cs[q] = 1.0;
          ss[q] = 0.0;
          continue;
        }
        const double aqq = m[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        cs[q] = c;
        ss[q] = s;
        rotate_rows(m + p * n, m + q * n, n, c, s);
        rotate_rows(vt.row(p), vt.row(q), n, c, s);
        app -= t * apq;
      }
      rotate_columns(m, n, p, cs.data(), ss.data(), 0, n);
    }
    // restore exact symmetry lost to rounding in the two half-updates
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = 0.5 * (m[i * n + j] + m[j * n + i]);
        m[i * n + j] = m[j * n + i] = v;
      }
    off = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    out.values[r] = a(order[r], order[r]);
    std::copy(vt.row(order[r]), vt.row(order[r]) + n, out.vectors.row(r));
  }
  out.sweeps = sweep;
  out.off_norm = off;
  return out;
}

}  // namespace sglab::sk
