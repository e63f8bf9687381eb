#include "minksum/steiner.hpp"

#include <cmath>
#include <numbers>

#include "minksum/bounds.hpp"
#include "minksum/surface_integrals.hpp"

namespace minksum {
namespace {

using std::numbers::pi;

void require_dim(const EllipsoidSum& scene, int dim, const char* what) {
  if (scene.dim() != dim) {
    throw ValidationError(std::string(what) + ": requires N = " + std::to_string(dim));
  }
}

EllipsoidSum prefix_of(const EllipsoidSum& scene, std::size_t count) {
  return EllipsoidSum(std::vector<Ellipsoid>(scene.begin(), scene.begin() + static_cast<std::ptrdiff_t>(count)));
}

// det(A) times the surface area of A^{-1} K, as the mixed volume 3 V(K, K, E_A):
// the integral of h_{E_A} against the area measure of K. Stays in the frame of K,
// which avoids the extra anisotropy of the transformed body.
double scaled_transformed_area(const EllipsoidSum& body, const SpdMatrix& a, const SphereQuadrature& quad) {
  return surface_integral(body, [&](const Vector&, const Vector& n) { return (a.matrix() * n).norm(); }, quad);
}

// det(A) times the mean-curvature integral of A^{-1} K, i.e. 3 V(K, E_A, E_A).
double scaled_transformed_mean(const EllipsoidSum& body, const SpdMatrix& a, const SphereQuadrature& quad) {
  return surface_integral(EllipsoidSum::from_shapes({a}),
                          [&](const Vector&, const Vector& n) { return support_value(body, n); }, quad);
}

}  // namespace

double elliptic_E(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("elliptic_E: argument must lie in [0, 1]");
  return std::comp_ellint_2(x);
}

double ellipse_perimeter(const SpdMatrix& a) {
  if (a.dim() != 2) throw ValidationError("ellipse_perimeter: requires a 2x2 matrix");
  const double s1 = a.max_eigenvalue();
  const double s2 = a.min_eigenvalue();
  const double ratio = std::min(1.0, s2 / s1);
  return 4.0 * s1 * elliptic_E(std::sqrt(std::max(0.0, 1.0 - ratio * ratio)));
}

double area_sum_2d_pair(const SpdMatrix& a1, const SpdMatrix& a2) {
  if (a1.dim() != 2 || a2.dim() != 2) {
    throw ValidationError("area_sum_2d_pair: requires 2x2 matrices");
  }
  const Matrix a2i = a2.inverse();
  const SpdMatrix rel = spd_sqrt(SpdMatrix(symmetrize(a2i * a1.matrix() * a1.matrix() * a2i)));
  return pi * (a1.determinant() + a2.determinant()) + a2.determinant() * ellipse_perimeter(rel);
}

SteinerReport area_sum_2d_report(const EllipsoidSum& scene) {
  require_dim(scene, 2, "area_sum_2d_recursive");
  SteinerReport report;
  double area = pi * scene[0].shape().determinant();
  for (std::size_t k = 1; k < scene.size(); ++k) {
    const SpdMatrix& a = scene[k].shape();
    const EllipsoidSum prefix = transform_scene(prefix_of(scene, k), a.inverse());
    double perimeter = 0.0;
    for (const auto& e : prefix) perimeter += ellipse_perimeter(e.shape());
    report.components.push_back({static_cast<int>(k), area, area, area, perimeter});
    area += a.determinant() * (perimeter + pi);
  }
  report.exact_value = area;
  report.lower = area;
  report.upper = area;
  return report;
}

double area_sum_2d_recursive(const EllipsoidSum& scene) {
  return *area_sum_2d_report(scene).exact_value;
}

double volume_sum_3d_pair(const SpdMatrix& a1, const SpdMatrix& a2, const SphereQuadrature& quad) {
  if (a1.dim() != 3 || a2.dim() != 3) {
    throw ValidationError("volume_sum_3d_pair: requires 3x3 matrices");
  }
  const auto e1 = EllipsoidSum::from_shapes({a1});
  const double ball = unit_ball_volume(3);
  return ball * a1.determinant() + scaled_transformed_area(e1, a2, quad) +
         scaled_transformed_mean(e1, a2, quad) + ball * a2.determinant();
}

SteinerReport volume_sum_3d_bounds(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  require_dim(scene, 3, "volume_sum_3d_bounds");
  const double ball = unit_ball_volume(3);
  SteinerReport report;
  double exact = ball * scene[0].shape().determinant();
  double lower = exact;
  double upper = exact;
  for (std::size_t k = 1; k < scene.size(); ++k) {
    const SpdMatrix& a = scene[k].shape();
    const double det = a.determinant();
    const EllipsoidSum prefix = prefix_of(scene, k);
    const double area = scaled_transformed_area(prefix, a, quad) / det;
    const double mean = scaled_transformed_mean(prefix, a, quad) / det;

    double area_lower = area;
    double area_upper = area;
    if (prefix.size() > 1) {
      // Inclusion survives the linear map A^{-1}, and surface area is monotone
      // under inclusion of convex bodies.
      auto ellipsoid_area = [&](const SpdMatrix& b) {
        return scaled_transformed_area(EllipsoidSum::from_shapes({b}), a, quad) / det;
      };
      area_lower = ellipsoid_area(inner_sum_matrix(prefix));
      for (const auto& c : john_inner_candidates(prefix)) {
        area_lower = std::max(area_lower, ellipsoid_area(c.matrix));
      }
      area_upper = std::min(ellipsoid_area(minvol_outer(prefix).matrix),
                            ellipsoid_area(outer_gamma_matrix(prefix, heuristic_gammas(prefix))));
    }
    report.components.push_back({static_cast<int>(k), area, area_lower, area_upper, mean});
    const double tail = ball * det;
    exact += det * (area + mean) + tail;
    lower += det * (area_lower + mean) + tail;
    upper += det * (area_upper + mean) + tail;
  }
  report.exact_value = exact;
  report.lower = lower;
  report.upper = upper;
  return report;
}

}  // namespace minksum
