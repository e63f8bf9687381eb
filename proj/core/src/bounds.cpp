#include "minksum/bounds.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "detail/nelder_mead.hpp"
#include "detail/sphere_search.hpp"
#include "minksum/surface_integrals.hpp"

namespace minksum {
namespace {

constexpr double kContainmentSlack = 1e-9;

SphereQuadrature containment_grid(int dim) {
  if (dim == 2) return build_quadrature(2, 720);
  if (dim == 3) return build_quadrature(3, 64);
  return build_quadrature(dim, 8);
}

void check_pair(const SpdMatrix& a, const SpdMatrix& b, const char* what) {
  if (a.dim() != b.dim()) throw ValidationError(std::string(what) + ": dimension mismatch");
}

double log_det_spd(const Matrix& m) {
  const Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  return 2.0 * Matrix(llt.matrixL()).diagonal().array().log().sum();
}

std::string term_label(int i) { return std::to_string(i + 1); }

// All binary bracketings of `items` (indices into `leaves`).
std::vector<InnerCandidate> bracketings(const std::vector<int>& items,
                                        const std::vector<SpdMatrix>& leaves) {
  if (items.size() == 1) {
    return {InnerCandidate{term_label(items[0]), leaves[static_cast<size_t>(items[0])]}};
  }
  std::vector<InnerCandidate> out;
  const int first = items[0];
  const std::vector<int> rest(items.begin() + 1, items.end());
  const unsigned subsets = 1u << rest.size();
  for (unsigned mask = 0; mask + 1 < subsets; ++mask) {
    std::vector<int> left{first};
    std::vector<int> right;
    for (size_t i = 0; i < rest.size(); ++i) {
      ((mask >> i) & 1u ? left : right).push_back(rest[i]);
    }
    for (const auto& l : bracketings(left, leaves)) {
      for (const auto& r : bracketings(right, leaves)) {
        out.push_back({"F(" + l.label + "," + r.label + ")", john_inner_pair(l.matrix, r.matrix)});
      }
    }
  }
  return out;
}

InnerCandidate greedy_pairing(const std::vector<SpdMatrix>& leaves) {
  std::vector<InnerCandidate> pool;
  for (size_t i = 0; i < leaves.size(); ++i) {
    pool.push_back({term_label(static_cast<int>(i)), leaves[i]});
  }
  while (pool.size() > 1) {
    size_t bi = 0, bj = 1;
    std::optional<SpdMatrix> best;
    for (size_t i = 0; i < pool.size(); ++i) {
      for (size_t j = i + 1; j < pool.size(); ++j) {
        SpdMatrix f = john_inner_pair(pool[i].matrix, pool[j].matrix);
        if (!best || f.determinant() > best->determinant()) {
          best = f;
          bi = i;
          bj = j;
        }
      }
    }
    pool[bi] = {"F(" + pool[bi].label + "," + pool[bj].label + ")", *best};
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(bj));
  }
  return pool.front();
}

std::vector<SpdMatrix> shapes_of(const EllipsoidSum& scene) {
  std::vector<SpdMatrix> out;
  for (const auto& e : scene) out.push_back(e.shape());
  return out;
}

// log det A_gamma^2 with w_i = 1/gamma_i.
double log_det_weights(const std::vector<Matrix>& squares, const std::vector<double>& w) {
  Matrix m = Matrix::Zero(squares.front().rows(), squares.front().cols());
  for (size_t i = 0; i < squares.size(); ++i) m += squares[i] / w[i];
  return log_det_spd(m);
}

}  // namespace

SpdMatrix inner_sum_matrix(const EllipsoidSum& scene) {
  Matrix sum = Matrix::Zero(scene.dim(), scene.dim());
  for (const auto& e : scene) sum += e.shape().matrix();
  return SpdMatrix(sum);
}

bool containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene) {
  return containment_check(candidate, scene, containment_grid(scene.dim()));
}

bool containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene,
                       const SphereQuadrature& grid) {
  if (candidate.dim() != scene.dim()) throw ValidationError("containment_check: dimension mismatch");
  const Matrix b2 = candidate.matrix() * candidate.matrix();
  auto excess = [&](const Vector& n, Vector* grad) {
    const double bn = (candidate.matrix() * n).norm();
    if (grad) *grad = b2 * n / bn - sum_boundary_point(scene, n);
    return bn - support_value(scene, n);
  };
  const double scale = scene.circumradius_bound();
  const double eta = 1.0 / (scale + candidate.max_eigenvalue());
  return detail::maximize_on_sphere(grid, excess, eta).value <= kContainmentSlack * scale;
}

bool outer_containment_check(const SpdMatrix& candidate, const EllipsoidSum& scene) {
  if (candidate.dim() != scene.dim()) {
    throw ValidationError("outer_containment_check: dimension mismatch");
  }
  const Matrix b2 = candidate.matrix() * candidate.matrix();
  auto excess = [&](const Vector& n, Vector* grad) {
    const double bn = (candidate.matrix() * n).norm();
    if (grad) *grad = sum_boundary_point(scene, n) - b2 * n / bn;
    return support_value(scene, n) - bn;
  };
  const double scale = scene.circumradius_bound();
  const double eta = 1.0 / (scale + candidate.max_eigenvalue());
  const SphereQuadrature grid = containment_grid(scene.dim());
  return detail::maximize_on_sphere(grid, excess, eta).value <= kContainmentSlack * scale;
}

std::vector<Vector> contact_points(const SpdMatrix& a1, const SpdMatrix& a2) {
  check_pair(a1, a2, "contact_points");
  // A1^{-1} A2 is similar to the symmetric A1^{-1/2} A2 A1^{-1/2}.
  const Matrix a1ih = spd_inverse_sqrt(a1).matrix();
  const SymEigen eig = sym_eigen(symmetrize(a1ih * a2.matrix() * a1ih));
  const Ellipsoid sum(SpdMatrix(a1.matrix() + a2.matrix()));
  std::vector<Vector> points;
  for (Eigen::Index j = 0; j < eig.vectors.cols(); ++j) {
    const Vector v = a1ih * eig.vectors.col(j);
    const Vector x = sum.boundary_point(v);
    points.push_back(x);
    points.push_back(-x);
  }
  return points;
}

SpdMatrix john_inner_pair(const SpdMatrix& a, const SpdMatrix& b) {
  check_pair(a, b, "john_inner_pair");
  const SpdMatrix a2(a.matrix() * a.matrix());
  const SpdMatrix b2(b.matrix() * b.matrix());
  const Matrix mean = geometric_mean(a2, b2).matrix();
  return spd_sqrt(SpdMatrix(a2.matrix() + 2.0 * mean + b2.matrix()));
}

std::vector<InnerCandidate> john_inner_candidates(const EllipsoidSum& scene) {
  const std::vector<SpdMatrix> leaves = shapes_of(scene);
  const int m = static_cast<int>(leaves.size());
  std::vector<InnerCandidate> out;
  if (m <= 4) {
    std::vector<int> items(static_cast<size_t>(m));
    std::iota(items.begin(), items.end(), 0);
    out = bracketings(items, leaves);
  } else {
    out.push_back(greedy_pairing(leaves));
  }
  if (m >= 3) {
    for (int k = 0; k < m; ++k) {
      Matrix rest = Matrix::Zero(scene.dim(), scene.dim());
      std::string label;
      for (int j = 0; j < m; ++j) {
        if (j == k) continue;
        rest += leaves[static_cast<size_t>(j)].matrix();
        label += (label.empty() ? "" : "+") + term_label(j);
      }
      out.push_back({"F(" + label + "," + term_label(k) + ")",
                     john_inner_pair(SpdMatrix(rest), leaves[static_cast<size_t>(k)])});
    }
  }
  return out;
}

SpdMatrix john_inner_recursive(const EllipsoidSum& scene) {
  const auto candidates = john_inner_candidates(scene);
  const InnerCandidate* best = &candidates.front();
  for (const auto& c : candidates) {
    if (c.matrix.determinant() > best->matrix.determinant()) best = &c;
  }
  return best->matrix;
}

SpdMatrix kv_inner_family(const SpdMatrix& a, const SpdMatrix& b, const SpdMatrix& s) {
  check_pair(a, b, "kv_inner_family");
  check_pair(a, s, "kv_inner_family");
  const Matrix& sm = s.matrix();
  const Matrix ra = spd_sqrt(SpdMatrix(sm * a.matrix() * a.matrix() * sm)).matrix();
  const Matrix rb = spd_sqrt(SpdMatrix(sm * b.matrix() * b.matrix() * sm)).matrix();
  const Matrix si = s.inverse();
  const Matrix mid = ra + rb;
  return spd_sqrt(SpdMatrix(si * mid * mid * si));
}

SpdMatrix outer_gamma_matrix(const EllipsoidSum& scene, const std::vector<double>& gammas) {
  if (gammas.size() != scene.size()) {
    throw ValidationError("outer_gamma_matrix: need one gamma per ellipsoid");
  }
  double inv_sum = 0.0;
  for (double g : gammas) {
    if (!(g > 0.0)) throw ValidationError("outer_gamma_matrix: gammas must be positive");
    inv_sum += 1.0 / g;
  }
  if (std::abs(inv_sum - 1.0) >= 1e-12) {
    throw ValidationError("outer_gamma_matrix: sum of 1/gamma must equal 1");
  }
  Matrix m = Matrix::Zero(scene.dim(), scene.dim());
  for (size_t i = 0; i < gammas.size(); ++i) m += gammas[i] * scene[i].shape_squared();
  return spd_sqrt(SpdMatrix(m));
}

namespace {

Vector beta_spectrum(const SpdMatrix& a1, const SpdMatrix& a2) {
  // Eigenvalues of A1^{-2} A2^2 via the congruent A1^{-1} A2^2 A1^{-1}.
  const Matrix a1i = a1.inverse();
  return SpdMatrix(symmetrize(a1i * a2.matrix() * a2.matrix() * a1i)).eigen().values;
}

double residual_from_spectrum(const Vector& mu, double beta) {
  double r = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    r += (1.0 - beta * beta * mu(j)) / (1.0 + beta * mu(j));
  }
  return r;
}

}  // namespace

double beta_residual(const SpdMatrix& a1, const SpdMatrix& a2, double beta) {
  check_pair(a1, a2, "beta_residual");
  return residual_from_spectrum(beta_spectrum(a1, a2), beta);
}

double optimal_beta(const SpdMatrix& a1, const SpdMatrix& a2) {
  check_pair(a1, a2, "optimal_beta");
  const Vector mu = beta_spectrum(a1, a2);
  // Term j changes sign at beta = mu_j^{-1/2}; the residual decreases in beta.
  double lo = 1.0 / std::sqrt(mu.maxCoeff());
  double hi = 1.0 / std::sqrt(mu.minCoeff());
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual_from_spectrum(mu, mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double rlo = residual_from_spectrum(mu, lo);
  const double rhi = residual_from_spectrum(mu, hi);
  return std::abs(rlo) <= std::abs(rhi) ? lo : hi;
}

std::array<double, 2> gammas_from_beta(double beta) { return {1.0 + 1.0 / beta, 1.0 + beta}; }

std::vector<double> heuristic_gammas(const EllipsoidSum& scene) {
  std::vector<double> roots;
  for (const auto& e : scene) roots.push_back(std::sqrt(e.shape_squared().trace()));
  const double total = std::accumulate(roots.begin(), roots.end(), 0.0);
  std::vector<double> gammas;
  for (double r : roots) gammas.push_back(total / r);
  return gammas;
}

SpdMatrix direction_outer_matrix(const EllipsoidSum& scene, const Vector& l) {
  double s = 0.0;
  Matrix m = Matrix::Zero(scene.dim(), scene.dim());
  for (const auto& e : scene) {
    const double a = e.support(l);
    s += a;
    m += e.shape_squared() / a;
  }
  return spd_sqrt(SpdMatrix(s * m));
}

MinVolResult minvol_outer(const EllipsoidSum& scene, const MinVolBudget& budget) {
  const int dim = scene.dim();
  std::vector<Matrix> squares;
  for (const auto& e : scene) squares.push_back(e.shape_squared());

  auto weights_for = [&](const Vector& u) {
    std::vector<double> w;
    double s = 0.0;
    for (const auto& e : scene) {
      w.push_back(e.support(u));
      s += w.back();
    }
    for (double& x : w) x /= s;
    return w;
  };
  auto direction_cost = [&](const Vector& u) { return log_det_weights(squares, weights_for(u)); };

  int resolution;
  if (dim == 2) {
    resolution = budget.grid_points > 0 ? budget.grid_points : 360;
  } else {
    const double pts = budget.grid_points > 0 ? budget.grid_points : 1000.0;
    resolution = std::max(4, static_cast<int>(std::ceil(std::pow(pts, 1.0 / (dim - 1)))));
  }
  const SphereQuadrature grid = build_quadrature(dim, resolution);
  Vector costs(static_cast<Eigen::Index>(grid.size()));
  for (Eigen::Index k = 0; k < costs.size(); ++k) costs(k) = direction_cost(grid.nodes.col(k));

  Vector best_dir = grid.nodes.col(0);
  double best_cost = std::numeric_limits<double>::infinity();
  for (Eigen::Index k : detail::top_indices(-costs, budget.starts)) {
    const Vector n0 = grid.nodes.col(k);
    if (costs(k) < best_cost) {
      best_cost = costs(k);
      best_dir = n0;
    }
    auto chart_cost = [&](const Vector& angles) { return direction_cost(sphere_chart(angles)); };
    const auto r = detail::nelder_mead(chart_cost, chart_angles(n0), 0.05, budget.max_iterations);
    if (r.value < best_cost) {
      best_cost = r.value;
      best_dir = sphere_chart(r.x);
    }
  }

  // Fixed-point descent over the whole simplex, w_i = 1/gamma_i.
  std::vector<double> w = weights_for(best_dir);
  double cost = best_cost;
  {
    std::vector<double> h = heuristic_gammas(scene);
    for (double& x : h) x = 1.0 / x;
    const double hc = log_det_weights(squares, h);
    if (hc < cost) {
      w = h;
      cost = hc;
    }
  }
  for (int it = 0; it < budget.gamma_iterations; ++it) {
    Matrix m = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < squares.size(); ++i) m += squares[i] / w[i];
    const Eigen::LLT<Matrix> llt(m);
    std::vector<double> target;
    double total = 0.0;
    for (const auto& q : squares) {
      target.push_back(std::sqrt(llt.solve(q).trace()));
      total += target.back();
    }
    for (double& x : target) x /= total;

    bool improved = false;
    for (double step = 1.0; step > 1e-6; step *= 0.5) {
      std::vector<double> trial(w.size());
      for (size_t i = 0; i < w.size(); ++i) trial[i] = (1.0 - step) * w[i] + step * target[i];
      const double tc = log_det_weights(squares, trial);
      if (tc < cost) {
        improved = cost - tc > 1e-15 * (1.0 + std::abs(cost));
        w = std::move(trial);
        cost = tc;
        break;
      }
    }
    if (!improved) break;
  }

  const bool refined = cost < best_cost - 1e-13 * (1.0 + std::abs(best_cost));
  if (!refined) w = weights_for(best_dir);
  std::vector<double> gammas;
  for (double x : w) gammas.push_back(1.0 / x);
  // sum 1/gamma = 1 up to roundoff; rebuild the matrix directly.
  Matrix m = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < squares.size(); ++i) m += gammas[i] * squares[i];
  MinVolResult result{spd_sqrt(SpdMatrix(m)), best_dir, gammas, refined};
  if (!outer_containment_check(result.matrix, scene)) {
    throw std::logic_error("minvol_outer: outer ellipsoid failed the containment check");
  }
  return result;
}

BoundReport volume_bounds(const EllipsoidSum& scene, const SphereQuadrature& quad) {
  const int dim = scene.dim();
  const double ball = unit_ball_volume(dim);

  const SpdMatrix inner_sum = inner_sum_matrix(scene);
  const auto candidates = john_inner_candidates(scene);
  const InnerCandidate* john = &candidates.front();
  for (const auto& c : candidates) {
    if (c.matrix.determinant() > john->matrix.determinant()) john = &c;
  }
  const SpdMatrix outer_opt = minvol_outer(scene).matrix;
  const SpdMatrix outer_heur = outer_gamma_matrix(scene, heuristic_gammas(scene));

  const double divergence = volume_divergence(scene, quad);
  double bm_tail = 0.0;
  for (const auto& e : scene) bm_tail += std::pow(e.volume(), 1.0 / dim);

  BoundReport r{inner_sum, john->matrix, john->label, outer_opt, outer_heur};
  r.lower_volume = ball * std::max(inner_sum.determinant(), john->matrix.determinant());
  r.upper_volume = ball * std::min(outer_opt.determinant(), outer_heur.determinant());
  r.divergence_volume = divergence;
  r.bm_chain = {divergence, ball * john->matrix.determinant(), ball * inner_sum.determinant(),
                std::pow(bm_tail, dim)};
  return r;
}

std::array<double, 4> brunn_minkowski_chain(const SpdMatrix& a1, const SpdMatrix& a2) {
  return brunn_minkowski_chain(a1, a2, build_quadrature(a1.dim(), default_resolution(a1.dim())));
}

std::array<double, 4> brunn_minkowski_chain(const SpdMatrix& a1, const SpdMatrix& a2,
                                            const SphereQuadrature& quad) {
  check_pair(a1, a2, "brunn_minkowski_chain");
  const int dim = a1.dim();
  const double ball = unit_ball_volume(dim);
  const EllipsoidSum scene = EllipsoidSum::from_shapes({a1, a2});
  const double tail = std::pow(ball * a1.determinant(), 1.0 / dim) +
                      std::pow(ball * a2.determinant(), 1.0 / dim);
  return {volume_divergence(scene, quad), ball * john_inner_pair(a1, a2).determinant(),
          ball * SpdMatrix(a1.matrix() + a2.matrix()).determinant(), std::pow(tail, dim)};
}

}  // namespace minksum
