#include "sglab/variational/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sglab/core/error.hpp"

namespace sglab::variational {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  require(n >= 1, "Nelder-Mead needs at least one parameter");
  NelderMeadResult out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : INFINITY;
  };
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, const std::vector<double>& worst, std::vector<double>& dst) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = centroid[i] + t * (worst[i] - centroid[i]);
  };
  for (; out.iterations < options.max_iterations;) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    double diameter = 0.0;
    for (std::size_t v = 0; v <= n; ++v) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) d2 += (simplex[v][i] - simplex[best][i]) * (simplex[v][i] - simplex[best][i]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    if (diameter < options.tolerance) {
      out.converged = true;
      break;
    }
    ++out.iterations;
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v <= n; ++v)
      if (v != worst)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v][i] / static_cast<double>(n);
    point(-1.0, simplex[worst], trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      point(-2.0, simplex[worst], trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[worst] = trial2;
        values[worst] = fe;
      } else {
        simplex[worst] = trial;
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = trial;
      values[worst] = fr;
    } else {
      // outside contraction if the reflection helped at all, inside otherwise
      const bool outside = fr < values[worst];
      point(outside ? -0.5 : 0.5, simplex[worst], trial2);
      const double fc = eval(trial2);
      if (fc < (outside ? fr : values[worst])) {
        simplex[worst] = trial2;
        values[worst] = fc;
      } else {
        for (std::size_t v = 0; v <= n; ++v) {
          if (v == best) continue;
          for (std::size_t i = 0; i < n; ++i) simplex[v][i] = simplex[best][i] + 0.5 * (simplex[v][i] - simplex[best][i]);
          values[v] = eval(simplex[v]);
        }
      }
    }
    out.trace.push_back(*std::min_element(values.begin(), values.end()));
  }
  const auto it = std::min_element(values.begin(), values.end());
  out.x = simplex[static_cast<std::size_t>(it - values.begin())];
  out.value = *it;
  return out;
}

}  // namespace sglab::variational
