#pragma once

#include <functional>

#include "minksum/curvature.hpp"
#include "minksum/sphere_quadrature.hpp"

namespace minksum {

/// f(x, n) evaluated at the boundary point x = x(n) with outward normal n.
using SurfaceIntegrand = std::function<double(const Vector& x, const Vector& n)>;

struct IntegrationOptions {
  /// Worker threads for node evaluation. The reduction runs in node order
  /// regardless, so the result does not depend on this value.
  int threads = 1;
};

/// Integral of f over the sum boundary, pulled back to the sphere through the
/// Gauss map: sum_k w_k f(x(n_k), n_k) det C~(n_k).
double surface_integral(const EllipsoidSum& scene, const SurfaceIntegrand& f,
                        const SphereQuadrature& quad, IntegrationOptions opts = {});

/// Boundary measure: perimeter for N = 2, surface area for N = 3.
double surface_area(const EllipsoidSum& scene, const SphereQuadrature& quad);

/// Integral of the mean curvature over the boundary, (1/2) int tr C(n) d sigma.
/// Linear in the scene terms. N = 3 only.
double mean_curvature_integral(const EllipsoidSum& scene, const SphereQuadrature& quad);

/// Integral of the Gauss-Kronecker curvature (product of principal curvatures).
/// Equals the area of the unit sphere for any convex body; used as a self-test.
double gaussian_curvature_integral(const EllipsoidSum& scene, const SphereQuadrature& quad);

/// Enclosed volume, (1/N) times the boundary integral of x . n.
double volume_divergence(const EllipsoidSum& scene, const SphereQuadrature& quad);

}  // namespace minksum
