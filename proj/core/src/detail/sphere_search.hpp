#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "minksum/sphere_quadrature.hpp"

namespace minksum::detail {

inline constexpr int kSearchStarts = 5;
inline constexpr int kSearchSteps = 20;

struct SphereMax {
  double value;
  Vector argmax;
};

/// Projected gradient ascent on the unit sphere. `f(n, grad)` returns the
/// objective and, when grad is non-null, writes its ambient gradient.
/// A step is taken only when it improves the objective; otherwise the step
/// length is halved. `eta` is the initial step length.
template <class Objective>
SphereMax refine_on_sphere(Objective&& f, Vector n, double eta, int steps = kSearchSteps) {
  Vector grad(n.size());
  double value = f(n, &grad);
  for (int it = 0; it < steps; ++it) {
    Vector tangent = grad - n.dot(grad) * n;
    if (tangent.norm() == 0.0) break;
    Vector trial = (n + eta * tangent).normalized();
    Vector trial_grad(n.size());
    const double trial_value = f(trial, &trial_grad);
    if (trial_value > value) {
      n = std::move(trial);
      grad = std::move(trial_grad);
      value = trial_value;
      eta *= 1.5;
    } else {
      eta *= 0.5;
    }
  }
  return {value, n};
}

/// Indices of the `count` largest entries, best first; ties keep grid order.
inline std::vector<Eigen::Index> top_indices(const Vector& values, int count) {
  std::vector<Eigen::Index> idx(static_cast<size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  const auto k = std::min<size_t>(static_cast<size_t>(count), idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](Eigen::Index a, Eigen::Index b) {
                      return values(a) > values(b) || (values(a) == values(b) && a < b);
                    });
  idx.resize(k);
  return idx;
}

/// Grid scan plus refinement from the best grid nodes.
template <class Objective>
SphereMax maximize_on_sphere(const SphereQuadrature& grid, Objective&& f, double eta) {
  Vector values(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    values(k) = f(grid.nodes.col(k), nullptr);
  }
  SphereMax best{-std::numeric_limits<double>::infinity(), Vector()};
  for (Eigen::Index k : top_indices(values, kSearchStarts)) {
    if (values(k) > best.value) best = {values(k), grid.nodes.col(k)};
    SphereMax r = refine_on_sphere(f, grid.nodes.col(k), eta);
    if (r.value > best.value) best = std::move(r);
  }
  return best;
}

}  // namespace minksum::detail
