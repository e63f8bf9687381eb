#include "minksum/sphere_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace minksum {
namespace {

using std::numbers::pi;

// Nodes ascending; integrates f(t) sqrt(1 - t^2) exactly for deg f < 2n.
std::pair<std::vector<double>, std::vector<double>> chebyshev_second_kind(int n) {
  std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const double a = pi * i / (n + 1);
    x[static_cast<size_t>(n - i)] = std::cos(a);
    w[static_cast<size_t>(n - i)] = pi / (n + 1) * std::sin(a) * std::sin(a);
  }
  return {x, w};
}

SphereQuadrature circle_rule(int resolution) {
  SphereQuadrature q;
  q.dim = 2;
  q.resolution = resolution;
  q.nodes.resize(2, resolution);
  q.weights.assign(static_cast<size_t>(resolution), 2.0 * pi / resolution);
  for (int k = 0; k < resolution; ++k) {
    const double t = 2.0 * pi * k / resolution;
    q.nodes(0, k) = std::cos(t);
    q.nodes(1, k) = std::sin(t);
  }
  q.covering_radius = pi / resolution;
  return q;
}

// S^{d-1} from S^{d-2}: n = (sqrt(1 - t^2) m, t), d sigma = (1 - t^2)^{(d-3)/2} dt d sigma'.
SphereQuadrature lift(const SphereQuadrature& lower, int resolution) {
  const int d = lower.dim + 1;
  // Odd d: the weight is a polynomial in t, so plain Gauss-Legendre is exact.
  // Even d: Gauss-Chebyshev of the second kind absorbs the sqrt(1 - t^2) factor.
  auto [t, w] = (d % 2 == 1) ? gauss_legendre(resolution) : chebyshev_second_kind(resolution);
  SphereQuadrature q;
  q.dim = d;
  q.resolution = resolution;
  q.nodes.resize(d, static_cast<Eigen::Index>(t.size() * lower.size()));
  q.weights.reserve(t.size() * lower.size());
  const double jac_power = 0.5 * (d - 3);
  Eigen::Index col = 0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double r = std::sqrt(std::max(0.0, 1.0 - t[i] * t[i]));
    const double wt = w[i] * std::pow(r * r, d % 2 == 1 ? jac_power : jac_power - 0.5);
    for (size_t k = 0; k < lower.size(); ++k) {
      q.nodes.col(col).head(d - 1) = r * lower.nodes.col(static_cast<Eigen::Index>(k));
      q.nodes(d - 1, col) = t[i];
      q.weights.push_back(wt * lower.weights[k]);
      ++col;
    }
  }
  if (d == 3) {
    // Polar-angle gaps between rings plus half the azimuth spacing.
    std::vector<double> theta(t.size());
    std::transform(t.begin(), t.end(), theta.begin(), [](double x) { return std::acos(x); });
    std::sort(theta.begin(), theta.end());
    double polar = std::max(theta.front(), pi - theta.back());
    for (size_t i = 0; i + 1 < theta.size(); ++i) {
      polar = std::max(polar, 0.5 * (theta[i + 1] - theta[i]));
    }
    q.covering_radius = polar + lower.covering_radius;
  } else {
    q.covering_radius = pi;
  }
  return q;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: need at least one node");
  std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (z * p1 - p0) / (z * z - 1.0);
    const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
    x[static_cast<size_t>(i)] = -z;
    x[static_cast<size_t>(n - 1 - i)] = z;
    w[static_cast<size_t>(i)] = wi;
    w[static_cast<size_t>(n - 1 - i)] = wi;
  }
  if (n % 2 == 1) x[static_cast<size_t>(n / 2)] = 0.0;
  return {x, w};
}

SphereQuadrature build_quadrature(int dim, int resolution) {
  if (dim < 2) {
    throw ValidationError("build_quadrature: dimension must be at least 2, got " +
                          std::to_string(dim));
  }
  if (resolution < 4) {
    throw ValidationError("build_quadrature: resolution must be at least 4");
  }
  SphereQuadrature q = circle_rule(resolution);
  for (int d = 3; d <= dim; ++d) q = lift(q, resolution);
  return q;
}

int default_resolution(int dim) {
  if (dim <= 2) return 256;
  if (dim == 3) return 64;
  return 8;
}

double sphere_area(int dim) {
  return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
}

double unit_ball_volume(int dim) {
  return std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

Vector sphere_chart(const Vector& angles) {
  const Eigen::Index n = angles.size() + 1;
  Vector out(n);
  double prod = 1.0;
  for (Eigen::Index j = 0; j < n - 1; ++j) {
    out(j) = prod * std::cos(angles(j));
    prod *= std::sin(angles(j));
  }
  out(n - 1) = prod;
  return out;
}

Vector chart_angles(const Vector& n) {
  const Eigen::Index dim = n.size();
  Vector angles(dim - 1);
  for (Eigen::Index j = 0; j + 2 < dim; ++j) {
    angles(j) = std::atan2(n.tail(dim - j - 1).norm(), n(j));
  }
  angles(dim - 2) = std::atan2(n(dim - 1), n(dim - 2));
  return angles;
}

Matrix sphere_chart_jacobian(const Vector& angles) {
  const Eigen::Index n = angles.size() + 1;
  Matrix jac = Matrix::Zero(n, n - 1);
  for (Eigen::Index i = 0; i < n - 1; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      // n_j = (prod_{k<j} sin phi_k) * (j < n-1 ? cos phi_j : 1)
      double v = 1.0;
      for (Eigen::Index k = 0; k < std::min(j, n - 1); ++k) {
        v *= (k == i) ? std::cos(angles(k)) : std::sin(angles(k));
      }
      if (j < n - 1) v *= (j == i) ? -std::sin(angles(j)) : std::cos(angles(j));
      jac(j, i) = v;
    }
  }
  return jac;
}

}  // namespace minksum
