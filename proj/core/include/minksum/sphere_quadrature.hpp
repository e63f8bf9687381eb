#pragma once

#include <utility>
#include <vector>

#include "minksum/spd.hpp"

namespace minksum {

/// Nodes and weights for integration over the unit sphere S^{N-1}.
///
/// N = 2: `resolution` equally spaced angles (periodic trapezoid rule).
/// N = 3: Gauss-Legendre in the polar cosine times a uniform azimuth grid,
///        resolution^2 nodes.
/// N > 3: the same product construction applied recursively,
///        resolution^{N-1} nodes. Levels of even dimension use Gauss-Chebyshev
///        (second kind) nodes so the (1 - t^2)^{1/2} Jacobian is integrated exactly.
struct SphereQuadrature {
  int dim = 0;
  int resolution = 0;
  Matrix nodes;                 // dim x size(), unit columns
  std::vector<double> weights;  // positive, sum to the area of S^{dim-1}
  /// Upper bound on the geodesic distance from any point of the sphere to the
  /// nearest node (pi when no useful bound is known).
  double covering_radius = 0.0;

  std::size_t size() const { return weights.size(); }
  Vector node(std::size_t k) const { return nodes.col(static_cast<Eigen::Index>(k)); }
};

SphereQuadrature build_quadrature(int dim, int resolution);

/// Resolution used when a caller does not specify one: 256 for circles,
/// 64 for S^2, 8 beyond.
int default_resolution(int dim);

/// Surface measure of S^{N-1}.
double sphere_area(int dim);

/// Volume of the unit N-ball, pi^{N/2} / Gamma(N/2 + 1).
double unit_ball_volume(int dim);

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Point on S^{N-1} from hyperspherical angles phi (N-1 of them):
/// n_1 = cos phi_1, n_2 = sin phi_1 cos phi_2, ..., n_N = sin phi_1 ... sin phi_{N-1}.
Vector sphere_chart(const Vector& angles);

/// Inverse of sphere_chart: angles of a unit vector (polar angles in [0, pi],
/// last angle in (-pi, pi]).
Vector chart_angles(const Vector& n);

/// d n / d phi_i for the chart above, as columns of an N x (N-1) matrix.
Matrix sphere_chart_jacobian(const Vector& angles);

}  // namespace minksum
