#pragma once

#include <optional>
#include <vector>

#include "minksum/geometry.hpp"
#include "minksum/sphere_quadrature.hpp"

namespace minksum {

/// One step K_{k+1} = K_k + E_{k+1} of the recursion, with K_1 = E_1.
/// In 2D `boundary_term` is the perimeter of A_{k+1}^{-1} K_k; in 3D it is its
/// mean-curvature integral. `area` is the area (2D: of K_k itself, 3D: surface
/// area of A_{k+1}^{-1} K_k), bracketed by `area_lower` and `area_upper`.
struct SteinerComponent {
  int step = 0;
  double area = 0.0;
  double area_lower = 0.0;
  double area_upper = 0.0;
  double boundary_term = 0.0;
};

struct SteinerReport {
  std::optional<double> exact_value;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<SteinerComponent> components;
};

/// Complete elliptic integral of the second kind, modulus x in [0, 1].
double elliptic_E(double x);

/// Perimeter of E_A for a 2x2 SPD A: 4 s1 E(sqrt(1 - s2^2 / s1^2)), s1 >= s2 eigenvalues.
double ellipse_perimeter(const SpdMatrix& a);

/// Exact area of E_{A1} + E_{A2} in the plane.
///
/// pi (det A1 + det A2) + det A2 * L(A2^{-1} E_{A1}), where the perimeter uses the
/// singular values of A2^{-1} A1, i.e. the semi-axes of the transformed ellipse.
double area_sum_2d_pair(const SpdMatrix& a1, const SpdMatrix& a2);

/// Area of an m-fold planar sum via perimeter additivity.
double area_sum_2d_recursive(const EllipsoidSum& scene);
SteinerReport area_sum_2d_report(const EllipsoidSum& scene);

/// Vol(E1) + det A2 (A + M)(A2^{-1} E1) + Vol(E2), A and M by quadrature.
double volume_sum_3d_pair(const SpdMatrix& a1, const SpdMatrix& a2, const SphereQuadrature& quad);

/// Recursion over the terms in 3D. exact_value uses quadrature surface areas of
/// the partial sums; lower/upper replace them by the areas of inner and outer
/// ellipsoids of each partial sum.
SteinerReport volume_sum_3d_bounds(const EllipsoidSum& scene, const SphereQuadrature& quad);

}  // namespace minksum
