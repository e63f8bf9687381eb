#include "minksum/spd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace minksum {
namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-14;

void check_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw ValidationError(std::string(what) + ": expected a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": matrix has non-finite entries");
  }
}

void check_symmetric(const Matrix& m, const char* what) {
  double scale = m.cwiseAbs().maxCoeff();
  double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * scale) {
    throw ValidationError(std::string(what) + ": matrix is not symmetric (asymmetry " +
                          std::to_string(asym) + ")");
  }
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

SymEigen sym_eigen(const Matrix& m) {
  check_square(m, "sym_eigen");
  check_symmetric(m, "sym_eigen");

  const Eigen::Index n = m.rows();
  Matrix a = symmetrize(m);
  Matrix v = Matrix::Identity(n, n);
  const double scale = a.norm();

  if (scale > 0.0) {
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
      if (off_diagonal_norm(a) < kJacobiTolerance * scale) break;
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (apq == 0.0) continue;
          // Rotation J in the (p,q) plane chosen so that (J^T A J)(p,q) = 0.
          const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
          const double c = 1.0 / std::hypot(t, 1.0);
          const double s = t * c;
          for (Eigen::Index k = 0; k < n; ++k) {
            const double akp = a(k, p);
            const double akq = a(k, q);
            a(k, p) = c * akp - s * akq;
            a(k, q) = s * akp + c * akq;
          }
          for (Eigen::Index k = 0; k < n; ++k) {
            const double apk = a(p, k);
            const double aqk = a(q, k);
            a(p, k) = c * apk - s * aqk;
            a(q, k) = s * apk + c * aqk;
          }
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });

  SymEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    Vector col = v.col(order[k]);
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(col(i)) > std::abs(col(imax))) imax = i;
    }
    if (col(imax) < 0.0) col = -col;
    out.vectors.col(k) = col;
  }
  return out;
}

SpdMatrix::SpdMatrix(const Matrix& entries) {
  check_square(entries, "SpdMatrix");
  check_symmetric(entries, "SpdMatrix");
  m_ = symmetrize(entries);
  eig_ = sym_eigen(m_);
  const double lmax = eig_.values(eig_.values.size() - 1);
  const double lmin = eig_.values(0);
  if (!(lmax > 0.0) || !(lmin > kPositiveDefiniteTolerance * lmax)) {
    throw ValidationError("SpdMatrix: matrix is not positive definite (eigenvalues " +
                          std::to_string(lmin) + " .. " + std::to_string(lmax) + ")");
  }
}

SpdMatrix SpdMatrix::identity(int dim) { return SpdMatrix(Matrix::Identity(dim, dim)); }

SpdMatrix SpdMatrix::diagonal(const Vector& diag) {
  return SpdMatrix(Matrix(diag.asDiagonal()));
}

double SpdMatrix::determinant() const { return eig_.values.prod(); }

Matrix SpdMatrix::inverse() const {
  return spectral_map([](double x) { return 1.0 / x; });
}

SpdMatrix spd_sqrt(const SpdMatrix& m) {
  return SpdMatrix(m.spectral_map([](double x) { return std::sqrt(x); }));
}

SpdMatrix spd_inverse_sqrt(const SpdMatrix& m) {
  return SpdMatrix(m.spectral_map([](double x) { return 1.0 / std::sqrt(x); }));
}

SpdMatrix geometric_mean(const SpdMatrix& p, const SpdMatrix& q) {
  if (p.dim() != q.dim()) {
    throw ValidationError("geometric_mean: dimension mismatch");
  }
  const Matrix ph = spd_sqrt(p).matrix();
  const Matrix pih = spd_inverse_sqrt(p).matrix();
  // The middle factor can be far worse conditioned than p or q, so take its
  // square root without the positive-definiteness check.
  const SymEigen inner = sym_eigen(symmetrize(pih * q.matrix() * pih));
  const Vector roots = inner.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix mid = inner.vectors * roots.asDiagonal() * inner.vectors.transpose();
  return SpdMatrix(symmetrize(ph * mid * ph));
}

double spectral_norm(const Matrix& m) {
  check_square(m, "spectral_norm");
  const SymEigen e = sym_eigen(symmetrize(m.transpose() * m));
  return std::sqrt(std::max(0.0, e.values(e.values.size() - 1)));
}

}  // namespace minksum
