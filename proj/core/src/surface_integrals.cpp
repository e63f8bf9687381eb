#include "minksum/surface_integrals.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace minksum {
namespace {

void check_grid(const EllipsoidSum& scene, const SphereQuadrature& quad, const char* what) {
  if (quad.dim != scene.dim()) {
    throw ValidationError(std::string(what) + ": quadrature dimension does not match the scene");
  }
}

// Neumaier-compensated sum in index order.
double ordered_sum(const std::vector<double>& terms) {
  double sum = 0.0;
  double comp = 0.0;
  for (double t : terms) {
    const double s = sum + t;
    if (std::abs(sum) >= std::abs(t)) {
      comp += (sum - s) + t;
    } else {
      comp += (t - s) + sum;
    }
    sum = s;
  }
  return sum + comp;
}

// Evaluates term(k) for every node into a buffer, then reduces in node order.
template <class Term>
double integrate_nodes(std::size_t count, int threads, Term&& term) {
  std::vector<double> values(count);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t k = 0; k < count; ++k) values[k] = term(k);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t k = static_cast<size_t>(w); k < count; k += static_cast<size_t>(workers)) {
          values[k] = term(k);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  return ordered_sum(values);
}

double reduced_determinant(const Matrix& reduced) {
  const Eigen::LLT<Matrix> llt(reduced);
  const double d = Matrix(llt.matrixL()).diagonal().prod();
  return d * d;
}

}  // namespace

double surface_integral(const EllipsoidSum& scene, const SurfaceIntegrand& f,
                        const SphereQuadrature& quad, IntegrationOptions opts) {
  check_grid(scene, quad, "surface_integral");
  return integrate_nodes(quad.size(), opts.threads, [&](std::size_t k) {
    const Vector n = quad.node(k);
    const Matrix reduced = reduced_curvature(curvature_matrix(scene, n), tangent_basis(n));
    return quad.weights[k] * f(sum_boundary_point(scene, n), n) * reduced_determinant(reduced);
  });
}

double surface_area(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  return surface_integral(scene, [](const Vector&, const Vector&) { return 1.0; }, quad);
}

double mean_curvature_integral(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  if (scene.dim() != 3) throw ValidationError("mean_curvature_integral: requires N = 3");
  check_grid(scene, quad, "mean_curvature_integral");
  return 0.5 * integrate_nodes(quad.size(), 1, [&](std::size_t k) {
           return quad.weights[k] * curvature_matrix(scene, quad.node(k)).full.trace();
         });
}

double gaussian_curvature_integral(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  check_grid(scene, quad, "gaussian_curvature_integral");
  return integrate_nodes(quad.size(), 1, [&](std::size_t k) {
    const Vector n = quad.node(k);
    const Matrix reduced = reduced_curvature(curvature_matrix(scene, n), tangent_basis(n));
    return quad.weights[k] * principal_curvatures(scene, n).prod() *
           reduced_determinant(reduced);
  });
}

double volume_divergence(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  auto x_dot_n = [](const Vector& x, const Vector& n) { return x.dot(n); };
  return surface_integral(scene, x_dot_n, quad) / scene.dim();
}

}  // namespace minksum
