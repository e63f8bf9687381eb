#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <string>
#include <numbers>

#include "minksum/bounds.hpp"
#include "minksum/surface_integrals.hpp"
#include "scenes.hpp"

namespace minksum {
namespace {

using std::numbers::pi;
using testing::ball;
using testing::rel_err;
using testing::Rng;

SpdMatrix diag(std::initializer_list<double> v) {
  Vector d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return SpdMatrix::diagonal(d);
}

TEST(InnerSum, KnownCases) {
  const auto ii = EllipsoidSum::from_shapes({SpdMatrix::identity(2), SpdMatrix::identity(2)});
  EXPECT_LT((inner_sum_matrix(ii).matrix() - 2 * Matrix::Identity(2, 2)).norm(), 1e-15);
  const SpdMatrix s = inner_sum_matrix(testing::reference_scene());
  Matrix expected(2, 2);
  expected << 7, 2, 2, 5.5;
  EXPECT_LT((s.matrix() - expected).norm(), 1e-14);
  EXPECT_NEAR(pi * s.determinant(), 108.38, 0.005);
}

TEST(InnerSum, TriangleInequalityInAllDirections) {
  Rng rng(51);
  const EllipsoidSum scene = testing::random_scene(rng, 3, 3);
  const SpdMatrix s = inner_sum_matrix(scene);
  for (int k = 0; k < 10000; ++k) {
    const Vector n = testing::random_unit(rng, 3);
    EXPECT_LE((s.matrix() * n).norm(), support_value(scene, n) * (1 + 1e-14));
  }
}

TEST(ContainmentCheck, AcceptsInnerAndRejectsDilation) {
  const auto commuting = EllipsoidSum::from_shapes({SpdMatrix::identity(2), diag({2, 1})});
  const SpdMatrix s = inner_sum_matrix(commuting);
  EXPECT_TRUE(containment_check(s, commuting));
  EXPECT_FALSE(containment_check(SpdMatrix(1.01 * s.matrix()), commuting));

  Rng rng(52);
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 2;
    const SpdMatrix a = testing::random_spd(rng, dim);
    const SpdMatrix b = testing::random_spd(rng, dim);
    const auto scene = EllipsoidSum::from_shapes({a, b});
    EXPECT_TRUE(containment_check(john_inner_pair(a, b), scene));
    EXPECT_TRUE(containment_check(inner_sum_matrix(scene), scene));
  }
}

TEST(ContainmentCheck, OuterMirror) {
  Rng rng(53);
  const EllipsoidSum scene = testing::random_scene(rng, 2, 3);
  const SpdMatrix heur = outer_gamma_matrix(scene, heuristic_gammas(scene));
  EXPECT_TRUE(outer_containment_check(heur, scene));
  EXPECT_FALSE(outer_containment_check(inner_sum_matrix(scene), scene));
}

TEST(ContactPoints, KnownCases) {
  const auto balls = contact_points(SpdMatrix::identity(2), SpdMatrix::identity(2));
  ASSERT_EQ(balls.size(), 4u);
  for (const auto& x : balls) EXPECT_NEAR(x.norm(), 2.0, 1e-14);

  const auto pts = contact_points(diag({1, 3}), diag({2, 0.5}));
  ASSERT_EQ(pts.size(), 4u);
  for (const auto& x : pts) {
    const bool on_x = std::abs(std::abs(x(0)) - 3.0) < 1e-13 && std::abs(x(1)) < 1e-13;
    const bool on_y = std::abs(std::abs(x(1)) - 3.5) < 1e-13 && std::abs(x(0)) < 1e-13;
    EXPECT_TRUE(on_x || on_y);
  }
}

TEST(ContactPoints, ReferencePairEqualityResidual) {
  const SpdMatrix a = testing::reference_a(), b = testing::reference_b();
  const auto scene = EllipsoidSum::from_shapes({a, b});
  const Matrix s = a.matrix() + b.matrix();
  const auto pts = contact_points(a, b);
  ASSERT_EQ(pts.size(), 4u);
  for (const auto& x : pts) {
    const Vector n = (s * s).ldlt().solve(x).normalized();
    EXPECT_LT(std::abs((s * n).norm() - support_value(scene, n)), 1e-10);
    EXPECT_LT((x - sum_boundary_point(scene, n)).norm(), 1e-10 * x.norm());
  }
}

TEST(JohnPair, KnownCases) {
  const SpdMatrix a = diag({1, 3}), b = diag({2, 0.5});
  EXPECT_LT((john_inner_pair(a, b).matrix() - (a.matrix() + b.matrix())).norm(), 1e-13);
  EXPECT_NEAR(pi * john_inner_pair(testing::reference_a(), testing::reference_b()).determinant(), 113.14, 0.005);
}

TEST(JohnPair, MatchesFactoredForm) {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const SpdMatrix a = testing::random_spd(rng, dim);
    const SpdMatrix b = testing::random_spd(rng, dim);
    const Matrix ai = a.inverse();
    const Matrix root = spd_sqrt(SpdMatrix(symmetrize(ai * b.matrix() * b.matrix() * ai))).matrix();
    const Matrix s = a.matrix() * (Matrix::Identity(dim, dim) + root);
    const Matrix factored = spd_sqrt(SpdMatrix(symmetrize(s * s.transpose()))).matrix();
    const Matrix f = john_inner_pair(a, b).matrix();
    EXPECT_LT((factored - f).norm(), 1e-9 * f.norm());
    // Strictly larger than A + B exactly when the pair does not commute.
    const double comm = (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
    if (comm > 1e-6) EXPECT_GT(john_inner_pair(a, b).determinant(), SpdMatrix(a.matrix() + b.matrix()).determinant());
  }
}

TEST(JohnPair, CertificateForCommutingPair) {
  const SpdMatrix a = diag({1, 3, 2}), b = diag({2, 0.5, 1});
  const auto scene = EllipsoidSum::from_shapes({a, b});
  const SpdMatrix s = inner_sum_matrix(scene);
  Matrix sum_outer = Matrix::Zero(3, 3);
  for (int j = 0; j < 3; ++j) {
    const Vector e = Vector::Unit(3, j);
    EXPECT_NEAR((s.matrix() * e).norm(), support_value(scene, e), 1e-14);
    const Vector x = s.matrix() * e;
    EXPECT_LT((x - sum_boundary_point(scene, e)).norm(), 1e-14);
    const Vector u = s.inverse() * x;
    sum_outer += u * u.transpose();
  }
  EXPECT_LT((sum_outer - Matrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(JohnRecursive, KnownCases) {
  const SpdMatrix a = diag({1.5, 0.7});
  const auto equal = EllipsoidSum::from_shapes({a, a, a});
  EXPECT_LT((john_inner_recursive(equal).matrix() - 3 * a.matrix()).norm(), 1e-13);
  const auto diags = EllipsoidSum::from_shapes({diag({1, 2}), diag({3, 0.5}), diag({0.2, 1})});
  EXPECT_LT((john_inner_recursive(diags).matrix() - inner_sum_matrix(diags).matrix()).norm(), 1e-13);
  const auto single = EllipsoidSum::from_shapes({a});
  EXPECT_LT((john_inner_recursive(single).matrix() - a.matrix()).norm(), 1e-15);
}

TEST(JohnRecursive, CandidateEnumeration) {
  Rng rng(55);
  EXPECT_EQ(john_inner_candidates(testing::random_scene(rng, 2, 2)).size(), 1u);
  // 3 bracketings + 3 leave-one-out composites; 15 + 4 for four terms.
  EXPECT_EQ(john_inner_candidates(testing::random_scene(rng, 2, 3)).size(), 6u);
  EXPECT_EQ(john_inner_candidates(testing::random_scene(rng, 2, 4)).size(), 19u);
  EXPECT_EQ(john_inner_candidates(testing::random_scene(rng, 2, 5)).size(), 6u);
  std::vector<std::string> labels;
  for (const auto& c : john_inner_candidates(testing::random_scene(rng, 2, 3))) labels.push_back(c.label);
  const std::vector<std::string> expected{"F(1,F(2,3))", "F(F(1,2),3)", "F(F(1,3),2)",
                                          "F(2+3,1)",    "F(1+3,2)",    "F(1+2,3)"};
  EXPECT_EQ(labels, expected);
}

TEST(JohnRecursive, NeverBelowSumAndContained) {
  Rng rng(56);
  for (int trial = 0; trial < 60; ++trial) {
    const int dim = 2 + trial % 2;
    const EllipsoidSum scene = testing::random_scene(rng, dim, 3 + trial % 3);
    const SpdMatrix best = john_inner_recursive(scene);
    EXPECT_GE(best.determinant(), inner_sum_matrix(scene).determinant() * (1 - 1e-12));
    EXPECT_TRUE(containment_check(best, scene));
  }
}

TEST(KvInnerFamily, RemarkCases) {
  Rng rng(57);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix a = testing::random_spd(rng, 3);
    const SpdMatrix b = testing::random_spd(rng, 3);
    const Matrix f = john_inner_pair(a, b).matrix();
    EXPECT_LT((kv_inner_family(a, b, SpdMatrix(a.inverse())).matrix() - f).norm(), 1e-9 * f.norm());
    EXPECT_LT((kv_inner_family(a, b, SpdMatrix(b.inverse())).matrix() - f).norm(), 1e-9 * f.norm());
    const SpdMatrix s = testing::random_spd(rng, 3);
    EXPECT_TRUE(containment_check(kv_inner_family(a, b, s), EllipsoidSum::from_shapes({a, b})));
  }
  const SpdMatrix c = diag({1, 2}), d = diag({3, 0.5});
  EXPECT_LT((kv_inner_family(c, d, SpdMatrix::identity(2)).matrix() - (c.matrix() + d.matrix())).norm(), 1e-14);
}

TEST(OuterGamma, KnownCasesAndValidation) {
  const auto ii = EllipsoidSum::from_shapes({SpdMatrix::identity(2), SpdMatrix::identity(2)});
  EXPECT_LT((outer_gamma_matrix(ii, {2, 2}).matrix() - 2 * Matrix::Identity(2, 2)).norm(), 1e-15);
  const double r = 1.5;
  const auto balls = EllipsoidSum::from_shapes({ball(2, r), ball(2, r)});
  EXPECT_NEAR(outer_gamma_matrix(balls, {3, 1.5}).matrix()(0, 0), r * std::sqrt(4.5), 1e-14);
  EXPECT_GE(outer_gamma_matrix(balls, {3, 1.5}).matrix()(0, 0), 2 * r);
  EXPECT_THROW(outer_gamma_matrix(ii, {2, 3}), ValidationError);
  EXPECT_THROW(outer_gamma_matrix(ii, {2}), ValidationError);
}

TEST(OuterGamma, HeuristicCauchySchwarz) {
  Rng rng(58);
  const EllipsoidSum scene = testing::random_scene(rng, 3, 4);
  const std::vector<double> g = heuristic_gammas(scene);
  double inv = 0.0;
  for (double x : g) inv += 1.0 / x;
  EXPECT_NEAR(inv, 1.0, 1e-14);
  const SpdMatrix outer = outer_gamma_matrix(scene, g);
  for (int k = 0; k < 10000; ++k) {
    const Vector n = testing::random_unit(rng, 3);
    EXPECT_GE((outer.matrix() * n).norm(), support_value(scene, n) * (1 - 1e-14));
  }
}

TEST(OuterGamma, HeuristicSpecialCases) {
  const SpdMatrix a = diag({1, 2});
  const auto equal = EllipsoidSum::from_shapes({a, a, a, a});
  for (double g : heuristic_gammas(equal)) EXPECT_NEAR(g, 4.0, 1e-14);
  Rng rng(59);
  const SpdMatrix a1 = testing::random_spd(rng, 2), a2 = testing::random_spd(rng, 2);
  const auto g = heuristic_gammas(EllipsoidSum::from_shapes({a1, a2}));
  const double beta = std::sqrt((a1.matrix() * a1.matrix()).trace() / (a2.matrix() * a2.matrix()).trace());
  EXPECT_NEAR(g[0], 1 + 1 / beta, 1e-13);
  EXPECT_NEAR(g[1], 1 + beta, 1e-13);
}

// det((1 + 1/beta) A1^2 + (1 + beta) A2^2) by golden section in log beta.
double brute_force_beta(const SpdMatrix& a1, const SpdMatrix& a2) {
  const Matrix q1 = a1.matrix() * a1.matrix(), q2 = a2.matrix() * a2.matrix();
  auto cost = [&](double t) {
    const double b = std::exp(t);
    return std::log(((1 + 1 / b) * q1 + (1 + b) * q2).determinant());
  };
  double lo = -20, hi = 20;
  const double phi = 0.5 * (std::sqrt(5.0) - 1);
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    if (cost(x1) < cost(x2)) {
      hi = x2;
    } else {
      lo = x1;
    }
  }
  return std::exp(0.5 * (lo + hi));
}

TEST(OptimalBeta, RandomPairs) {
  Rng rng(60);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 3;
    const SpdMatrix a1 = testing::random_spd(rng, dim), a2 = testing::random_spd(rng, dim);
    const double beta = optimal_beta(a1, a2);
    EXPECT_LT(std::abs(beta_residual(a1, a2, beta)), 1e-12);
    EXPECT_LT(rel_err(beta, brute_force_beta(a1, a2)), 1e-6);
    auto det_at = [&](double b) {
      const auto g = gammas_from_beta(b);
      return outer_gamma_matrix(EllipsoidSum::from_shapes({a1, a2}), {g[0], g[1]}).determinant();
    };
    EXPECT_LE(det_at(beta), det_at(1.1 * beta));
    EXPECT_LE(det_at(beta), det_at(0.9 * beta));

    // The residual changes sign across the bracket [mu_max^{-1/2}, mu_min^{-1/2}].
    Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> es(a2.matrix() * a2.matrix(), a1.matrix() * a1.matrix());
    const Vector mu = es.eigenvalues();
    EXPECT_GE(beta_residual(a1, a2, 1 / std::sqrt(mu.maxCoeff())), -1e-14);
    EXPECT_LE(beta_residual(a1, a2, 1 / std::sqrt(mu.minCoeff())), 1e-14);
  }
}

TEST(OptimalBeta, SymmetricCases) {
  Rng rng(61);
  const SpdMatrix a = testing::random_spd(rng, 3);
  EXPECT_NEAR(optimal_beta(a, a), 1.0, 1e-12);
  const auto g = gammas_from_beta(1.0);
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SpdMatrix a1 = testing::random_spd(rng, 2);
    const Matrix r = testing::random_rotation(rng, 2);
    const SpdMatrix a2(symmetrize(r * a1.matrix() * r.transpose()));
    EXPECT_NEAR(optimal_beta(a1, a2), 1.0, 1e-10);
  }
}

TEST(OptimalBeta, RotatedCopyIn3dNeedNotGiveOne) {
  // Rotation symmetry forces beta = 1 in the plane (the two spectra are
  // reciprocal there) but not in general.
  const SpdMatrix a1 = diag({1, 2, 4});
  Matrix r(3, 3);
  r << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  const SpdMatrix a2(symmetrize(r * a1.matrix() * r.transpose()));
  EXPECT_GT(std::abs(optimal_beta(a1, a2) - 1.0), 1e-3);
}

TEST(MinVolOuter, MatchesOptimalBetaForPairs) {
  Rng rng(62);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 2;
    const SpdMatrix a1 = testing::random_spd(rng, dim), a2 = testing::random_spd(rng, dim);
    const auto scene = EllipsoidSum::from_shapes({a1, a2});
    const auto g = gammas_from_beta(optimal_beta(a1, a2));
    const double exact = outer_gamma_matrix(scene, {g[0], g[1]}).determinant();
    const MinVolResult r = minvol_outer(scene);
    EXPECT_LE(r.matrix.determinant(), exact * (1 + 1e-9));
    EXPECT_GE(r.matrix.determinant(), exact * (1 - 1e-9));
  }
}

TEST(MinVolOuter, DirectionFamilyProperties) {
  const double r = 0.8;
  const auto balls = EllipsoidSum::from_shapes({ball(3, r), ball(3, r), ball(3, r)});
  Rng rng(63);
  const Vector l = testing::random_unit(rng, 3);
  EXPECT_LT((direction_outer_matrix(balls, l).matrix() - 3 * r * Matrix::Identity(3, 3)).norm(), 1e-13);

  const EllipsoidSum scene = testing::random_scene(rng, 3, 3);
  const MinVolResult res = minvol_outer(scene);
  double inv = 0.0;
  for (double g : res.gammas) inv += 1.0 / g;
  EXPECT_NEAR(inv, 1.0, 1e-14);
  EXPECT_LT((direction_outer_matrix(scene, res.direction).matrix() -
             direction_outer_matrix(scene, -res.direction).matrix()).norm(), 1e-13);
  EXPECT_LE(res.matrix.determinant(),
            outer_gamma_matrix(scene, heuristic_gammas(scene)).determinant() * (1 + 1e-12));
  EXPECT_TRUE(outer_containment_check(res.matrix, scene));
}

TEST(VolumeBounds, SingleEllipsoidIsExact) {
  Rng rng(64);
  const SpdMatrix a = testing::random_spd(rng, 3);
  const auto scene = EllipsoidSum::from_shapes({a});
  const BoundReport r = volume_bounds(scene, build_quadrature(3, 32));
  const double exact = unit_ball_volume(3) * a.determinant();
  EXPECT_LT(rel_err(r.lower_volume, exact), 1e-12);
  EXPECT_LT(rel_err(r.upper_volume, exact), 1e-12);
}

TEST(VolumeBounds, ReferencePairAndRandomSandwich) {
  const BoundReport ref = volume_bounds(testing::reference_scene(), build_quadrature(2, 256));
  EXPECT_GE(ref.lower_volume, 113.14 * (1 - 5e-3));
  EXPECT_EQ(ref.inner_john_label, "F(1,2)");

  Rng rng(65);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 2 + trial % 2;
    const EllipsoidSum scene = testing::random_scene(rng, dim, 3);
    const BoundReport r = volume_bounds(scene, build_quadrature(dim, default_resolution(dim)));
    EXPECT_LE(r.lower_volume, r.divergence_volume * (1 + 1e-9));
    EXPECT_LE(r.divergence_volume, r.upper_volume * (1 + 1e-9));
  }
}

TEST(BrunnMinkowskiChain, HomotheticReferenceAndDegenerate) {
  Rng rng(66);
  const SpdMatrix a = testing::random_spd(rng, 2);
  const auto h = brunn_minkowski_chain(a, SpdMatrix(2.5 * a.matrix()));
  for (int i = 1; i < 4; ++i) EXPECT_LT(rel_err(h[static_cast<size_t>(i)], h[0]), 1e-9);

  const auto p = brunn_minkowski_chain(testing::reference_a(), testing::reference_b());
  EXPECT_GT(p[1], p[2]);
  EXPECT_GT(p[2], p[3]);
  EXPECT_GE(p[0], p[1]);

  const double eps = 1e-3;
  const auto d = brunn_minkowski_chain(diag({1, eps}), diag({eps, 1}));
  EXPECT_NEAR(d[1], pi, 0.01);
  EXPECT_LT(d[3], 0.02);
}

}  // namespace
}  // namespace minksum
