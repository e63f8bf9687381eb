#pragma once

#include <Eigen/QR>
#include <cmath>
#include <random>
#include <vector>

#include "minksum/geometry.hpp"

namespace minksum::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix random_orthogonal(Rng& rng, int dim) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ();
  // Fix column signs with R's diagonal so the distribution is Haar.
  const Matrix r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

inline Matrix random_rotation(Rng& rng, int dim) {
  Matrix q = random_orthogonal(rng, dim);
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

/// Q diag(lambda) Q^T with eigenvalues in [lo, hi].
inline SpdMatrix random_spd(Rng& rng, int dim, double lo = 0.5, double hi = 2.5) {
  const Matrix q = random_orthogonal(rng, dim);
  Vector lam(dim);
  for (int i = 0; i < dim; ++i) lam(i) = uniform(rng, lo, hi);
  return SpdMatrix(q * lam.asDiagonal() * q.transpose());
}

inline EllipsoidSum random_scene(Rng& rng, int dim, int terms, double lo = 0.5, double hi = 2.5) {
  std::vector<SpdMatrix> shapes;
  for (int i = 0; i < terms; ++i) shapes.push_back(random_spd(rng, dim, lo, hi));
  return EllipsoidSum::from_shapes(shapes);
}

inline Vector random_unit(Rng& rng, int dim) {
  std::normal_distribution<double> g;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = g(rng);
  return v.normalized();
}

inline SpdMatrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return SpdMatrix(m);
}

inline SpdMatrix reference_a() { return mat2(5.0, 0.0, 0.0, 0.5); }
inline SpdMatrix reference_b() { return mat2(2.0, 2.0, 2.0, 5.0); }
inline EllipsoidSum reference_scene() { return EllipsoidSum::from_shapes({reference_a(), reference_b()}); }

inline SpdMatrix ball(int dim, double r) { return SpdMatrix(r * Matrix::Identity(dim, dim)); }

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace minksum::testing
