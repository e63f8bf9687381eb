#pragma once

#include <cstddef>
#include <vector>

#include "minksum/spd.hpp"
#include "minksum/sphere_quadrature.hpp"

namespace minksum {

/// Shapes whose condition number exceeds this are accepted but the scene is
/// flagged unreliable.
inline constexpr double kConditionWarning = 1e8;

/// Origin-centred solid ellipsoid E_A = { x : x^T A^{-2} x < 1 }.
class Ellipsoid {
 public:
  explicit Ellipsoid(SpdMatrix shape);

  int dim() const { return shape_.dim(); }
  const SpdMatrix& shape() const { return shape_; }
  const Matrix& shape_squared() const { return shape_sq_; }

  /// ||A n||, the support function of E_A.
  double support(const Vector& n) const { return (shape_.matrix() * n).norm(); }
  /// Boundary point with outward normal n / ||n||: A^2 n / ||A n||.
  Vector boundary_point(const Vector& n) const;
  /// x^T A^{-2} x; equals 1 on the boundary.
  double implicit_value(const Vector& x) const;
  double volume() const;

 private:
  SpdMatrix shape_;
  Matrix shape_sq_;
  Matrix inv_shape_sq_;
};

/// Ellipsoid { S u : ||u|| < 1 } for a nonsingular S, i.e. A = (S S^T)^{1/2}.
Ellipsoid ellipsoid_from_general(const Matrix& s);

/// Ordered Minkowski sum E_1 + ... + E_m of ellipsoids of a common dimension.
class EllipsoidSum {
 public:
  explicit EllipsoidSum(std::vector<Ellipsoid> terms);
  static EllipsoidSum from_shapes(const std::vector<SpdMatrix>& shapes);

  int dim() const { return dim_; }
  std::size_t size() const { return terms_.size(); }
  const Ellipsoid& operator[](std::size_t i) const { return terms_[i]; }
  const std::vector<Ellipsoid>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// False when some term is worse conditioned than kConditionWarning.
  bool reliable() const;
  /// sum_i lambda_max(A_i): bounds ||x|| for every point of the sum.
  double circumradius_bound() const;

 private:
  std::vector<Ellipsoid> terms_;
  int dim_ = 0;
};

/// x(n) = sum_i A_i^2 n / ||A_i n||. Positively homogeneous of degree 0 in n.
Vector sum_boundary_point(const EllipsoidSum& scene, const Vector& n);

/// Two-term offset parameterization x(u) = A1 u + A2 w / ||w||, w = A2 A1^{-1} u.
Vector legacy_pair_boundary(const SpdMatrix& a1, const SpdMatrix& a2, const Vector& u);

/// h(n) = sum_i ||A_i n||.
double support_value(const EllipsoidSum& scene, const Vector& n);

/// Maps every term A_i to (S A_i^2 S^T)^{1/2}, so the new sum is S times the old one.
EllipsoidSum transform_scene(const EllipsoidSum& scene, const Matrix& s);

enum class Membership { kInside, kOutside, kBoundary };

const char* to_string(Membership m);

/// 1e-8 times the diameter bound of the scene.
double default_membership_tolerance(const EllipsoidSum& scene);

/// Point-in-sum test by maximizing phi(n) = x.n - h(n) over the sphere: a grid
/// scan followed by 20 projected-gradient steps from the 5 best grid nodes.
Membership contains_point(const EllipsoidSum& scene, const Vector& x,
                          const SphereQuadrature& grid, double tol);

/// Same test with the grid support values cached, for repeated queries.
class MembershipTester {
 public:
  MembershipTester(const EllipsoidSum& scene, const SphereQuadrature& grid, double tol);

  Membership classify(const Vector& x) const;
  /// Largest phi found for x (after refinement when it was needed).
  double max_violation(const Vector& x) const;

 private:
  double evaluate(const Vector& x, bool* early_outside) const;

  EllipsoidSum scene_;
  Matrix nodes_;
  Vector support_;
  double tol_;
  double radius_;
  double covering_;
};

}  // namespace minksum
