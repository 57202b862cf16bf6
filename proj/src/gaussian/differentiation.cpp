#include "sglab/gaussian/differentiation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sglab/core/error.hpp"
#include "sglab/core/format.hpp"
#include "sglab/core/parallel.hpp"
#include "sglab/gaussian/quadrature.hpp"
#include "sglab/gaussian/replica.hpp"

namespace sglab::gaussian {

TestFunction log_sum_exp_psi(std::vector<double> xi, double beta) {
  for (double w : xi) require(w > 0.0, "psi: weights must be positive");
  TestFunction f;
  f.value = [xi, beta](const std::vector<double>& x) {
    LogSumExp acc;
    for (std::size_t g = 0; g < xi.size(); ++g) acc.add(std::log(xi[g]) - beta * x[g]);
    return acc.value();
  };
  f.hessian = [xi, beta](const std::vector<double>& x, Matrix& h) {
    const auto z = replica_weights(xi, beta, x);
    const std::size_t n = z.size();
    h = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) h(a, b) = beta * beta * ((a == b ? z[a] : 0.0) - z[a] * z[b]);
  };
  return f;
}

TestFunction coordinate(std::size_t i) {
  TestFunction f;
  f.value = [i](const std::vector<double>& x) { return x.at(i); };
  f.hessian = [](const std::vector<double>& x, Matrix& h) { h = Matrix(x.size(), x.size()); };
  return f;
}

TestFunction square(std::size_t i) {
  TestFunction f;
  f.value = [i](const std::vector<double>& x) { return x.at(i) * x.at(i); };
  f.hessian = [i](const std::vector<double>& x, Matrix& h) {
    h = Matrix(x.size(), x.size());
    h(i, i) = 2.0;
  };
  return f;
}

TestFunction square_product(std::size_t i, std::size_t j) {
  require(i != j, "square_product needs distinct coordinates");
  TestFunction f;
  f.value = [i, j](const std::vector<double>& x) { return x.at(i) * x.at(i) * x.at(j) * x.at(j); };
  f.hessian = [i, j](const std::vector<double>& x, Matrix& h) {
    h = Matrix(x.size(), x.size());
    h(i, i) = 2.0 * x[j] * x[j];
    h(j, j) = 2.0 * x[i] * x[i];
    h(i, j) = h(j, i) = 4.0 * x[i] * x[j];
  };
  return f;
}

Matrix hessian_of(const TestFunction& psi, const std::vector<double>& x) {
  Matrix h;
  if (psi.hessian) {
    psi.hessian(x, h);
    return h;
  }
  const std::size_t n = x.size();
  const double e = 1e-4;
  h = Matrix(n, n);
  std::vector<double> y = x;
  const double f0 = psi.value(x);
  for (std::size_t a = 0; a < n; ++a) {
    y[a] = x[a] + e;
    const double fp = psi.value(y);
    y[a] = x[a] - e;
    const double fm = psi.value(y);
    y[a] = x[a];
    h(a, a) = (fp - 2.0 * f0 + fm) / (e * e);
    for (std::size_t b = 0; b < a; ++b) {
      double s = 0.0;
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          y[a] = x[a] + sa * e;
          y[b] = x[b] + sb * e;
          s += sa * sb * psi.value(y);
        }
      y[a] = x[a];
      y[b] = x[b];
      h(a, b) = h(b, a) = s / (4.0 * e * e);
    }
  }
  return h;
}

namespace {

double contract_half(const Matrix& dc, const Matrix& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < dc.data().size(); ++i) s += dc.data()[i] * h.data()[i];
  return 0.5 * s;
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": nonfinite test function value");
}

// Tensor Gauss-Hermite over the factor's (at most 2) latent coordinates.
template <class G>
double tensor_expectation(const CholeskyFactor& f, int order, G&& g) {
  require(f.rank <= 2, "quadrature route needs covariance rank <= 2");
  const auto& rule = gauss_hermite(order);
  std::vector<double> z(2, 0.0), x(f.n);
  if (f.rank == 0) {
    f.apply(z.data(), x.data());
    return g(x);
  }
  double s = 0.0;
  const std::size_t m = rule.nodes.size();
  for (std::size_t a = 0; a < m; ++a) {
    z[0] = rule.nodes[a];
    if (f.rank == 1) {
      f.apply(z.data(), x.data());
      s += rule.weights[a] * g(x);
      continue;
    }
    for (std::size_t b = 0; b < m; ++b) {
      z[1] = rule.nodes[b];
      f.apply(z.data(), x.data());
      s += rule.weights[a] * rule.weights[b] * g(x);
    }
  }
  return s;
}

}  // namespace

ResidualReport differentiation_identity_residual(const GaussianFamily& family, const TestFunction& psi,
                                                 double t, std::uint64_t seed, std::size_t samples, double h) {
  require(family.has_path(), "differentiation identity needs a covariance path C(t)");
  require(samples >= 2, "differentiation identity: need at least two samples");
  require(h > 1e-8, "differentiation identity: step size underflow");
  const CholeskyFactor f0 = pivoted_cholesky(family.covariance(t));
  const CholeskyFactor fp = cholesky_with_order(family.covariance(t + h), f0.pivots, f0.rank);
  const CholeskyFactor fm = cholesky_with_order(family.covariance(t - h), f0.pivots, f0.rank);
  const Matrix dc = family.derivative(t);

  struct Row {
    double lhs, rhs;
  };
  auto rows = parallel_draws(samples, seed, [&](std::size_t, RandomStream& rng) {
    std::vector<double> z(f0.rank), x0(f0.n), xp(f0.n), xm(f0.n);
    for (auto& v : z) v = rng.normal();
    f0.apply(z.data(), x0.data());
    fp.apply(z.data(), xp.data());
    fm.apply(z.data(), xm.data());
    const double a = psi.value(xp), b = psi.value(xm);
    check_finite(a, "differentiation identity");
    check_finite(b, "differentiation identity");
    const double rhs = contract_half(dc, hessian_of(psi, x0));
    check_finite(rhs, "differentiation identity");
    return Row{(a - b) / (2.0 * h), rhs};
  });
  RunningStats l, r, d;
  for (const auto& row : rows) {
    l.add(row.lhs);
    r.add(row.rhs);
    d.add(row.lhs - row.rhs);
  }
  ResidualReport out;
  out.lhs = l.mean();
  out.rhs = r.mean();
  out.residual = std::fabs(d.mean());
  out.se = d.stderr_mean();
  out.lhs_se = l.stderr_mean();
  out.rhs_se = r.stderr_mean();
  out.samples = samples;
  return out;
}

double quadrature_expectation(const Matrix& c, const TestFunction& psi, int order) {
  const CholeskyFactor f = pivoted_cholesky(c);
  return tensor_expectation(f, order, [&](const std::vector<double>& x) { return psi.value(x); });
}

ResidualReport quadrature_identity_residual(const GaussianFamily& family, const TestFunction& psi, double t,
                                            int order, double h) {
  require(family.has_path(), "differentiation identity needs a covariance path C(t)");
  const CholeskyFactor f0 = pivoted_cholesky(family.covariance(t));
  auto mean_at = [&](double s) {
    const CholeskyFactor f = cholesky_with_order(family.covariance(s), f0.pivots, f0.rank);
    return tensor_expectation(f, order, [&](const std::vector<double>& x) { return psi.value(x); });
  };
  const double d1 = (mean_at(t + h) - mean_at(t - h)) / (2.0 * h);
  const double d2 = (mean_at(t + h / 2) - mean_at(t - h / 2)) / h;
  const Matrix dc = family.derivative(t);
  ResidualReport out;
  out.lhs = (4.0 * d2 - d1) / 3.0;
  out.rhs = tensor_expectation(f0, order, [&](const std::vector<double>& x) {
    return contract_half(dc, hessian_of(psi, x));
  });
  out.residual = std::fabs(out.lhs - out.rhs);
  return out;
}

InterpolationTerms interpolation_derivative(const std::vector<double>& xi, double beta,
                                            const GaussianFamily& family, double t, std::uint64_t seed,
                                            std::size_t samples) {
  require(xi.size() == family.size(), "interpolation derivative: weight/family size mismatch");
  require(samples >= 2, "interpolation derivative: need at least two samples");
  InterpolationTerms out;

  // keep the heaviest states until the dropped tail is negligible
  std::vector<std::size_t> order(xi.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xi[a] > xi[b]; });
  std::vector<double> sorted(xi.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = xi[order[i]];
  const Truncation tr = truncate_weights(sorted, 1e-8);
  constexpr std::size_t kMaxStates = 4000;
  std::size_t kept = std::min(tr.kept, kMaxStates);
  if (kept < xi.size()) {
    double tail = 0.0;
    for (std::size_t i = kept; i < sorted.size(); ++i) tail += sorted[i];
    if (tail > 1e-8 * tr.total)
      out.warnings.push_back("truncated weight tail " + format_double(tail / tr.total) +
                             " of total exceeds 1e-8; derivative error bounded by beta^2 max|dC| times it");
  } else {
    kept = xi.size();
  }
  order.resize(kept);
  std::sort(order.begin(), order.end());

  const Matrix cfull = family.covariance(t), dfull = family.derivative(t);
  Matrix c(kept, kept), dc(kept, kept);
  std::vector<double> w(kept);
  for (std::size_t a = 0; a < kept; ++a) {
    w[a] = xi[order[a]];
    for (std::size_t b = 0; b < kept; ++b) {
      c(a, b) = cfull(order[a], order[b]);
      dc(a, b) = dfull(order[a], order[b]);
    }
  }
  const GaussianSampler sampler(c);
  struct Row {
    double single, pair;
  };
  auto rows = parallel_draws(samples, seed, [&](std::size_t, RandomStream& rng) {
    const auto x = sampler.sample(rng);
    const auto z = replica_weights(w, beta, x);
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t a = 0; a < kept; ++a) {
      s1 += z[a] * dc(a, a);
      double inner = 0.0;
      for (std::size_t b = 0; b < kept; ++b) inner += dc(a, b) * z[b];
      s2 += z[a] * inner;
    }
    return Row{s1, s2};
  });
  RunningStats s1, s2, d;
  for (const auto& r : rows) {
    s1.add(r.single);
    s2.add(r.pair);
    d.add(0.5 * beta * beta * (r.single - r.pair));
  }
  out.single = s1.estimate();
  out.pair = s2.estimate();
  out.derivative = d.estimate();
  return out;
}

Estimate interpolation_integral(const std::vector<double>& xi, double beta, const GaussianFamily& family,
                                double t1, double t2, int nodes, std::uint64_t seed, std::size_t samples) {
  const QuadratureRule rule = gauss_legendre(nodes, t1, t2);
  Estimate out;
  double var = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
    const auto d = interpolation_derivative(xi, beta, family, rule.nodes[j], derive_seed(seed, j), samples);
    out.mean += rule.weights[j] * d.derivative.mean;
    var += rule.weights[j] * rule.weights[j] * d.derivative.se * d.derivative.se;
  }
  out.se = std::sqrt(var);
  out.count = samples * rule.nodes.size();
  return out;
}

ComparisonReport family_comparison_bound(const Matrix& cx, const Matrix& cy, const std::vector<double>& xi,
                                         double beta, std::uint64_t seed, std::size_t samples) {
  require(cx.rows() == cy.rows() && cx.cols() == cy.cols(), "comparison bound: index sets differ");
  require(xi.size() == cx.rows(), "comparison bound: weight count differs from index count");
  require(samples >= 2, "comparison bound: need at least two samples");
  const CholeskyFactor fx = pivoted_cholesky(cx), fy = pivoted_cholesky(cy);
  const std::size_t r = std::max(fx.rank, fy.rank);
  const TestFunction psi = log_sum_exp_psi(xi, beta);
  auto diffs = parallel_draws(samples, seed, [&](std::size_t, RandomStream& rng) {
    std::vector<double> z(r), x(fx.n), y(fy.n);
    for (auto& v : z) v = rng.normal();
    fx.apply(z.data(), x.data());
    fy.apply(z.data(), y.data());
    const double d = psi.value(x) - psi.value(y);
    check_finite(d, "comparison bound");
    return d;
  });
  ComparisonReport out;
  out.difference = summarize(diffs);
  out.abs_difference = std::fabs(out.difference.mean);
  bool diag_equal = true;
  for (std::size_t i = 0; i < cx.rows(); ++i) {
    for (std::size_t j = 0; j < cx.cols(); ++j)
      out.max_cov_gap = std::max(out.max_cov_gap, std::fabs(cx(i, j) - cy(i, j)));
    if (std::fabs(cx(i, i) - cy(i, i)) > 1e-12) diag_equal = false;
  }
  out.sharpened = diag_equal;
  out.bound = (diag_equal ? 0.5 : 1.0) * beta * beta * out.max_cov_gap;
  out.holds = out.abs_difference <= out.bound + 3.0 * out.difference.se;
  return out;
}

}  // namespace sglab::gaussian
