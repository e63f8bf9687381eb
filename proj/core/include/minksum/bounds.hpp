#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "minksum/geometry.hpp"
#include "minksum/sphere_quadrature.hpp"

namespace minksum {

// ---------------------------------------------------------------------------
// Inner ellipsoids
// ---------------------------------------------------------------------------

/// A_sum = sum_i A_i. E_{A_sum} lies inside the Minkowski sum.
SpdMatrix inner_sum_matrix(const EllipsoidSum& scene);

/// True iff ||B n|| <= sum_j ||A_j n|| (up to 1e-9 times the scene radius) at
/// the maximizer found by a refined sphere search, i.e. E_B lies in the sum.
bool containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene);
bool containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene,
                       const SphereQuadrature& grid);

/// Mirror test for outer candidates: sum_j ||A_j n|| <= ||B n|| everywhere.
bool outer_containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene);

/// The 2N points +-x_{E_sum}(v_j), v_j eigenvectors of A1^{-1} A2, where the
/// inner ellipsoid E_{A1+A2} touches the boundary of E_1 + E_2.
std::vector<Vector> contact_points(const SpdMatrix& a1, const SpdMatrix& a2);

/// Maximal-volume inscribed ellipsoid of E_A + E_B:
/// F(A, B) = [A^2 + 2 A^2 # B^2 + B^2]^{1/2}.
SpdMatrix john_inner_pair(const SpdMatrix& a, const SpdMatrix& b);

struct InnerCandidate {
  std::string label;  // e.g. "F(F(1,2),3)" or "F(1+2,3)"; terms are 1-based
  SpdMatrix matrix;
};

/// Inner ellipsoids built from pairwise John steps, in construction order:
/// every binary bracketing of the terms for m <= 4 (greedy largest-determinant
/// pairing beyond), followed by F(sum_{j != k} A_j, A_k) for each k.
std::vector<InnerCandidate> john_inner_candidates(const EllipsoidSum& scene);

/// The candidate above with the largest determinant (first one on ties).
SpdMatrix john_inner_recursive(const EllipsoidSum& scene);

/// Inner family parameterized by an SPD matrix S:
/// S^^2 = S^{-1} [(S A^2 S)^{1/2} + (S B^2 S)^{1/2}]^2 S^{-1}.
SpdMatrix kv_inner_family(const SpdMatrix& a, const SpdMatrix& b, const SpdMatrix& s);

// ---------------------------------------------------------------------------
// Outer ellipsoids A_gamma = (sum_i gamma_i A_i^2)^{1/2}, sum_i 1/gamma_i = 1
// ---------------------------------------------------------------------------

SpdMatrix outer_gamma_matrix(const EllipsoidSum& scene, const std::vector<double>& gammas);

/// Sum_j (1 - beta^2 mu_j) / (1 + beta mu_j), mu_j the eigenvalues of A1^{-2} A2^2.
double beta_residual(const SpdMatrix& a1, const SpdMatrix& a2, double beta);

/// Positive root of beta_residual; minimizes det A_gamma over the two-term family
/// with gamma = (1 + 1/beta, 1 + beta).
double optimal_beta(const SpdMatrix& a1, const SpdMatrix& a2);

std::array<double, 2> gammas_from_beta(double beta);

/// gamma'_i = sum_j sqrt(tr A_j^2) / sqrt(tr A_i^2).
std::vector<double> heuristic_gammas(const EllipsoidSum& scene);

struct MinVolBudget {
  int grid_points = 0;        // 0: 360 for N = 2, about 10^3 otherwise
  int starts = 5;             // Nelder-Mead starts from the best grid points
  int max_iterations = 400;   // per Nelder-Mead run
  int gamma_iterations = 500; // fixed-point refinement over the full gamma simplex
};

struct MinVolResult {
  SpdMatrix matrix;
  Vector direction;           // best l on the sphere
  std::vector<double> gammas;
  /// True when the gamma-simplex refinement improved on the best A(l).
  bool refined_off_direction_family = false;
};

/// Minimum-volume member of the A_gamma family.
///
/// Searches A(l) = (sum_j ||A_j l||)^{1/2} (sum_i A_i^2 / ||A_i l||)^{1/2} over
/// l on the sphere (grid plus Nelder-Mead in chart angles), then refines over
/// the gamma simplex with the stationarity fixed point
/// 1/gamma_i ~ sqrt(tr(A_gamma^{-2} A_i^2)), started from the better of that
/// result and the heuristic gammas. The second stage matters when m > N, where
/// the l-parameterized family does not reach every gamma.
MinVolResult minvol_outer(const EllipsoidSum& scene, const MinVolBudget& budget = {});

/// A(l) for a given direction.
SpdMatrix direction_outer_matrix(const EllipsoidSum& scene, const Vector& l);

// ---------------------------------------------------------------------------
// Volume bounds
// ---------------------------------------------------------------------------

struct BoundReport {
  SpdMatrix inner_sum;
  SpdMatrix inner_john;
  std::string inner_john_label;
  SpdMatrix outer_optimal;
  SpdMatrix outer_heuristic;
  double lower_volume = 0.0;
  double upper_volume = 0.0;
  double divergence_volume = 0.0;
  /// In volume units, weakly descending: the true volume, Vol(B) det(John),
  /// Vol(B) det(A_sum), and (sum_i Vol(E_i)^{1/N})^N.
  std::array<double, 4> bm_chain{};
};

BoundReport volume_bounds(const EllipsoidSum& scene, const SphereQuadrature& quad);

/// Brunn-Minkowski comparison for a pair, in volume units (see bm_chain).
/// The true volume comes from the divergence integral on `quad` (default grid
/// when omitted).
std::array<double, 4> brunn_minkowski_chain(const SpdMatrix& a1, const SpdMatrix& a2);
std::array<double, 4> brunn_minkowski_chain(const SpdMatrix& a1, const SpdMatrix& a2,
                                            const SphereQuadrature& quad);

}  // namespace minksum
