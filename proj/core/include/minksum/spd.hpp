#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace minksum {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Thrown when an input fails a numeric precondition (non-symmetric,
/// not positive definite, singular, wrong dimension, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Relative asymmetry accepted before a matrix is rejected.
inline constexpr double kSymmetryTolerance = 1e-12;
/// Smallest eigenvalue must exceed this fraction of the largest one.
inline constexpr double kPositiveDefiniteTolerance = 1e-10;

/// Spectral factorization of a symmetric matrix.
///
/// `values` ascend; `vectors` holds orthonormal eigenvectors as columns, each
/// signed so that its largest-magnitude entry is positive.
struct SymEigen {
  Vector values;
  Matrix vectors;
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices.
SymEigen sym_eigen(const Matrix& m);

/// (M + M^T) / 2.
Matrix symmetrize(const Matrix& m);

/// Dense symmetric positive-definite matrix with a validated spectrum.
///
/// Construction symmetrizes the input and rejects it unless every eigenvalue
/// exceeds kPositiveDefiniteTolerance * lambda_max. The eigendecomposition is
/// kept so that square roots, inverses and determinants are cheap.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Matrix& entries);

  static SpdMatrix identity(int dim);
  static SpdMatrix diagonal(const Vector& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  const SymEigen& eigen() const { return eig_; }
  double min_eigenvalue() const { return eig_.values(0); }
  double max_eigenvalue() const { return eig_.values(dim() - 1); }
  double condition_number() const { return max_eigenvalue() / min_eigenvalue(); }
  double determinant() const;
  Matrix inverse() const;

  /// Applies f to the spectrum: V diag(f(lambda)) V^T.
  template <class F>
  Matrix spectral_map(F&& f) const {
    Vector mapped = eig_.values.unaryExpr(f);
    return symmetrize(eig_.vectors * mapped.asDiagonal() * eig_.vectors.transpose());
  }

 private:
  Matrix m_;
  SymEigen eig_;
};

SpdMatrix spd_sqrt(const SpdMatrix& m);
SpdMatrix spd_inverse_sqrt(const SpdMatrix& m);

/// Operator geometric mean P # Q = P^{1/2} (P^{-1/2} Q P^{-1/2})^{1/2} P^{1/2}.
SpdMatrix geometric_mean(const SpdMatrix& p, const SpdMatrix& q);

/// Largest singular value of a general square matrix.
double spectral_norm(const Matrix& m);

}  // namespace minksum
