#pragma once

#include <utility>

#include "minksum/geometry.hpp"

namespace minksum {

/// C(n) = sum_i C(A_i, n): symmetric, positive semidefinite, C n = 0, and
/// positive definite on the plane orthogonal to n.
struct CurvatureMatrix {
  Matrix full;
  Vector normal;
};

/// Orthonormal basis of the plane orthogonal to n, as N x (N-1) columns.
struct TangentBasis {
  Matrix columns;
};

/// C(A, n) = A^2 / ||A n|| - A^2 n n^T A^2 / ||A n||^3.
///
/// Defined for n of any nonzero length; for unit n it is the derivative of
/// A^2 n / ||A n|| along the sphere.
Matrix curvature_term(const SpdMatrix& a, const Vector& n);

CurvatureMatrix curvature_matrix(const EllipsoidSum& scene, const Vector& n);

/// Columns 1..N-1 of the Householder reflector that maps e_N to n.
TangentBasis tangent_basis(const Vector& n);

/// M^T C M, the curvature matrix restricted to the tangent plane.
Matrix reduced_curvature(const CurvatureMatrix& c, const TangentBasis& m);

/// Principal curvatures of the sum boundary at x(n), in ascending order.
/// These are the reciprocals of the eigenvalues of the reduced curvature matrix.
Vector principal_curvatures(const EllipsoidSum& scene, const Vector& n);

/// Metric tensor G and second fundamental form L of the boundary in the
/// hyperspherical chart at `angles` (see sphere_chart). Polar angles must stay
/// at least 1e-6 away from 0 and pi.
struct FundamentalForms {
  Matrix metric;
  Matrix second;
};

FundamentalForms fundamental_forms(const EllipsoidSum& scene, const Vector& angles);

}  // namespace minksum
