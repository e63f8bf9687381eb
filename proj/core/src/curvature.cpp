#include "minksum/curvature.hpp"

#include <cmath>
#include <numbers>

namespace minksum {

Matrix curvature_term(const SpdMatrix& a, const Vector& n) {
  const Matrix a2 = a.matrix() * a.matrix();
  const Vector a2n = a2 * n;
  const double s = (a.matrix() * n).norm();
  return symmetrize(a2 / s - a2n * a2n.transpose() / (s * s * s));
}

CurvatureMatrix curvature_matrix(const EllipsoidSum& scene, const Vector& n) {
  if (n.size() != scene.dim()) throw ValidationError("curvature_matrix: dimension mismatch");
  Matrix c = Matrix::Zero(scene.dim(), scene.dim());
  for (const auto& e : scene) {
    const Vector a2n = e.shape_squared() * n;
    const double s = e.support(n);
    c += e.shape_squared() / s - a2n * a2n.transpose() / (s * s * s);
  }
  return {symmetrize(c), n};
}

TangentBasis tangent_basis(const Vector& n) {
  const Eigen::Index dim = n.size();
  Vector w = -n;
  w(dim - 1) += 1.0;
  const double ww = w.squaredNorm();
  Matrix h = Matrix::Identity(dim, dim);
  if (ww > 0.0) h -= (2.0 / ww) * w * w.transpose();
  return {h.leftCols(dim - 1)};
}

Matrix reduced_curvature(const CurvatureMatrix& c, const TangentBasis& m) {
  return symmetrize(m.columns.transpose() * c.full * m.columns);
}

Vector principal_curvatures(const EllipsoidSum& scene, const Vector& n) {
  const CurvatureMatrix c = curvature_matrix(scene, n);
  const Matrix reduced = reduced_curvature(c, tangent_basis(n));
  // Eigenvalues ascend, so their reciprocals descend; reverse for output.
  const Vector radii = sym_eigen(reduced).values;
  return radii.reverse().cwiseInverse();
}

FundamentalForms fundamental_forms(const EllipsoidSum& scene, const Vector& angles) {
  constexpr double kPoleMargin = 1e-6;
  if (angles.size() != scene.dim() - 1) {
    throw ValidationError("fundamental_forms: expected N-1 chart angles");
  }
  for (Eigen::Index i = 0; i + 1 < angles.size(); ++i) {
    if (angles(i) < kPoleMargin || angles(i) > std::numbers::pi - kPoleMargin) {
      throw ValidationError("fundamental_forms: chart point too close to a pole");
    }
  }
  const Vector n = sphere_chart(angles);
  const Matrix jac = sphere_chart_jacobian(angles);

  // Orthonormal tangent frame from the (mutually orthogonal) chart derivatives.
  Matrix frame(jac.rows(), jac.cols());
  Vector scale(jac.cols());
  for (Eigen::Index i = 0; i < jac.cols(); ++i) {
    scale(i) = jac.col(i).norm();
    frame.col(i) = jac.col(i) / scale(i);
  }
  const Matrix reduced = reduced_curvature(curvature_matrix(scene, n), TangentBasis{frame});
  const auto j = scale.asDiagonal();
  return {symmetrize(j * reduced * reduced * j), symmetrize(j * reduced * j)};
}

}  // namespace minksum
