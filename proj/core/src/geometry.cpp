#include "minksum/geometry.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>

#include "detail/sphere_search.hpp"

namespace minksum {

Ellipsoid::Ellipsoid(SpdMatrix shape)
    : shape_(std::move(shape)),
      shape_sq_(symmetrize(shape_.matrix() * shape_.matrix())),
      inv_shape_sq_(shape_.spectral_map([](double x) { return 1.0 / (x * x); })) {}

Vector Ellipsoid::boundary_point(const Vector& n) const {
  return shape_sq_ * n / support(n);
}

double Ellipsoid::implicit_value(const Vector& x) const { return x.dot(inv_shape_sq_ * x); }

double Ellipsoid::volume() const { return unit_ball_volume(dim()) * shape_.determinant(); }

Ellipsoid ellipsoid_from_general(const Matrix& s) {
  if (s.rows() == 0 || s.rows() != s.cols()) {
    throw ValidationError("ellipsoid_from_general: expected a square matrix");
  }
  const double norm = spectral_norm(s);
  const double det = s.determinant();
  if (!(std::abs(det) > 1e-12 * std::pow(norm, static_cast<double>(s.rows())))) {
    throw ValidationError("ellipsoid_from_general: matrix is singular");
  }
  return Ellipsoid(spd_sqrt(SpdMatrix(symmetrize(s * s.transpose()))));
}

EllipsoidSum::EllipsoidSum(std::vector<Ellipsoid> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("EllipsoidSum: need at least one ellipsoid");
  dim_ = terms_.front().dim();
  for (size_t i = 1; i < terms_.size(); ++i) {
    if (terms_[i].dim() != dim_) {
      throw ValidationError("EllipsoidSum: term " + std::to_string(i) + " has dimension " +
                            std::to_string(terms_[i].dim()) + ", expected " +
                            std::to_string(dim_));
    }
  }
}

EllipsoidSum EllipsoidSum::from_shapes(const std::vector<SpdMatrix>& shapes) {
  std::vector<Ellipsoid> terms;
  terms.reserve(shapes.size());
  for (const auto& s : shapes) terms.emplace_back(s);
  return EllipsoidSum(std::move(terms));
}

bool EllipsoidSum::reliable() const {
  for (const auto& t : terms_) {
    if (t.shape().condition_number() > kConditionWarning) return false;
  }
  return true;
}

double EllipsoidSum::circumradius_bound() const {
  double r = 0.0;
  for (const auto& t : terms_) r += t.shape().max_eigenvalue();
  return r;
}

Vector sum_boundary_point(const EllipsoidSum& scene, const Vector& n) {
  if (n.size() != scene.dim()) throw ValidationError("sum_boundary_point: dimension mismatch");
  if (!(n.norm() > 0.0)) throw ValidationError("sum_boundary_point: zero normal vector");
  Vector x = Vector::Zero(scene.dim());
  for (const auto& e : scene) x += e.boundary_point(n);
  return x;
}

Vector legacy_pair_boundary(const SpdMatrix& a1, const SpdMatrix& a2, const Vector& u) {
  const Vector w = a2.matrix() * (a1.inverse() * u);
  return a1.matrix() * u + a2.matrix() * (w / w.norm());
}

double support_value(const EllipsoidSum& scene, const Vector& n) {
  double h = 0.0;
  for (const auto& e : scene) h += e.support(n);
  return h;
}

EllipsoidSum transform_scene(const EllipsoidSum& scene, const Matrix& s) {
  if (s.rows() != scene.dim() || s.cols() != scene.dim()) {
    throw ValidationError("transform_scene: dimension mismatch");
  }
  const double det = s.determinant();
  if (!(std::abs(det) > 1e-12 * std::pow(spectral_norm(s), static_cast<double>(s.rows())))) {
    throw ValidationError("transform_scene: matrix is singular");
  }
  std::vector<Ellipsoid> out;
  out.reserve(scene.size());
  for (const auto& e : scene) {
    out.emplace_back(spd_sqrt(SpdMatrix(symmetrize(s * e.shape_squared() * s.transpose()))));
  }
  return EllipsoidSum(std::move(out));
}

const char* to_string(Membership m) {
  switch (m) {
    case Membership::kInside:
      return "inside";
    case Membership::kOutside:
      return "outside";
    case Membership::kBoundary:
      return "boundary";
  }
  return "unknown";
}

double default_membership_tolerance(const EllipsoidSum& scene) {
  return 1e-8 * 2.0 * scene.circumradius_bound();
}

Membership contains_point(const EllipsoidSum& scene, const Vector& x,
                          const SphereQuadrature& grid, double tol) {
  return MembershipTester(scene, grid, tol).classify(x);
}

MembershipTester::MembershipTester(const EllipsoidSum& scene, const SphereQuadrature& grid,
                                   double tol)
    : scene_(scene),
      nodes_(grid.nodes),
      support_(static_cast<Eigen::Index>(grid.size())),
      tol_(tol),
      radius_(scene.circumradius_bound()),
      covering_(grid.covering_radius) {
  if (grid.dim != scene.dim()) throw ValidationError("MembershipTester: grid dimension mismatch");
  for (Eigen::Index k = 0; k < support_.size(); ++k) {
    support_(k) = support_value(scene, nodes_.col(k));
  }
}

double MembershipTester::evaluate(const Vector& x, bool* early_outside) const {
  const Eigen::Index dim = nodes_.rows();
  const Eigen::Index count = nodes_.cols();
  const double* node = nodes_.data();
  Vector phi(count);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < count; ++k, node += dim) {
    double dot = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) dot += node[i] * x(i);
    const double v = dot - support_(k);
    phi(k) = v;
    if (v > best) best = v;
    if (early_outside && v > tol_) {
      *early_outside = true;
      return v;
    }
  }
  // phi is Lipschitz on the sphere with constant ||x|| + R, so when even the
  // covering-radius slack keeps it below -tol no refinement can change the answer.
  const double slack = (x.norm() + radius_) * covering_;
  if (best + slack < -tol_) return best;

  auto objective = [&](const Vector& n, Vector* grad) {
    double h = 0.0;
    Vector xn = Vector::Zero(dim);
    for (const auto& e : scene_) {
      const double s = e.support(n);
      h += s;
      if (grad) xn += e.shape_squared() * n / s;
    }
    if (grad) *grad = x - xn;
    return x.dot(n) - h;
  };
  const double eta = 1.0 / (x.norm() + radius_);
  for (Eigen::Index k : detail::top_indices(phi, detail::kSearchStarts)) {
    const detail::SphereMax r = detail::refine_on_sphere(objective, nodes_.col(k), eta);
    best = std::max(best, r.value);
  }
  if (early_outside && best > tol_) *early_outside = true;
  return best;
}

double MembershipTester::max_violation(const Vector& x) const { return evaluate(x, nullptr); }

Membership MembershipTester::classify(const Vector& x) const {
  if (x.size() != nodes_.rows()) throw ValidationError("contains_point: dimension mismatch");
  bool outside = false;
  const double v = evaluate(x, &outside);
  if (outside || v > tol_) return Membership::kOutside;
  if (v < -tol_) return Membership::kInside;
  return Membership::kBoundary;
}

}  // namespace minksum
