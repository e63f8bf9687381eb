#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "minksum/spd.hpp"

namespace minksum::detail {

struct SimplexResult {
  Vector x;
  double value;
};

/// Plain Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// Deterministic: the initial simplex is x0 plus `step` along each axis.
template <class F>
SimplexResult nelder_mead(F&& f, const Vector& x0, double step, int max_iterations,
                          double ftol = 1e-15) {
  const Eigen::Index n = x0.size();
  std::vector<Vector> pts(static_cast<size_t>(n + 1), x0);
  std::vector<double> vals(static_cast<size_t>(n + 1));
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<size_t>(i + 1)](i) += step;
  for (size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);

  std::vector<size_t> order(pts.size());
  for (int it = 0; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    const size_t best = order.front();
    const size_t worst = order.back();
    const size_t second = order[order.size() - 2];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (1.0 + std::abs(vals[best]))) break;

    Vector centroid = Vector::Zero(n);
    for (size_t i = 0; i + 1 < order.size(); ++i) centroid += pts[order[i]];
    centroid /= static_cast<double>(n);

    const Vector reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Vector expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vector contracted = outside ? Vector(centroid + 0.5 * (reflected - centroid))
                                      : Vector(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (size_t i = 0; i < pts.size(); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  const size_t idx = static_cast<size_t>(it - vals.begin());
  return {pts[idx], *it};
}

}  // namespace minksum::detail
