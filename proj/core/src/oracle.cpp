#include "minksum/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>
#include <vector>

#include "minksum/bounds.hpp"

namespace minksum {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace {

struct BatchCount {
  std::uint64_t inside = 0;
  std::uint64_t boundary = 0;
};

SphereQuadrature default_membership_grid(int dim) {
  if (dim == 2) return build_quadrature(2, 720);
  if (dim == 3) return build_quadrature(3, 64);
  return build_quadrature(dim, 8);
}

}  // namespace

McEstimate monte_carlo_volume(const EllipsoidSum& scene, std::uint64_t samples, std::uint64_t seed,
                              const SphereQuadrature& membership_grid, int threads) {
  if (samples < 1000) throw ValidationError("monte_carlo_volume: need at least 1000 samples");
  const int dim = scene.dim();
  const SpdMatrix outer = minvol_outer(scene).matrix;
  const Matrix outer_sq = outer.matrix() * outer.matrix();
  const Vector half = outer_sq.diagonal().cwiseSqrt();
  const double box_volume = (2.0 * half).prod();

  const double tol = default_membership_tolerance(scene);
  const MembershipTester tester(scene, membership_grid, tol);
  // Exact shortcuts: if ||B^{-1} x|| = r for an inscribed E_B then
  // phi(x) <= (r - 1) lambda_min(B), and for a circumscribed E_O
  // phi(x) >= (r - 1) lambda_min(O). Points decided this way get the same
  // classification the grid test would give.
  const SpdMatrix inner = john_inner_recursive(scene);
  const Matrix inner_inv = inner.inverse();
  const Matrix outer_inv = outer.inverse();
  const double inside_radius = 1.0 - 2.0 * tol / inner.min_eigenvalue();
  const double outside_radius = 1.0 + 2.0 * tol / outer.min_eigenvalue();
  auto classify = [&](const Vector& x) {
    if ((outer_inv * x).norm() > outside_radius) return Membership::kOutside;
    if ((inner_inv * x).norm() < inside_radius) return Membership::kInside;
    return tester.classify(x);
  };
  const std::uint64_t batches = (samples + kMonteCarloBatch - 1) / kMonteCarloBatch;
  std::vector<BatchCount> counts(batches);

  auto run_batch = [&](std::uint64_t b) {
    std::mt19937_64 gen(splitmix64(seed + b));
    const std::uint64_t begin = b * kMonteCarloBatch;
    const std::uint64_t end = std::min(samples, begin + kMonteCarloBatch);
    Vector x(dim);
    BatchCount c;
    for (std::uint64_t s = begin; s < end; ++s) {
      for (int i = 0; i < dim; ++i) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        x(i) = (2.0 * u - 1.0) * half(i);
      }
      const Membership m = classify(x);
      if (m != Membership::kOutside) ++c.inside;
      if (m == Membership::kBoundary) ++c.boundary;
    }
    counts[b] = c;
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(batches)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t b = static_cast<std::uint64_t>(t); b < batches;
             b += static_cast<std::uint64_t>(workers)) {
          run_batch(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  std::uint64_t inside = 0;
  for (const auto& c : counts) {
    inside += c.inside;
    est.boundary_count += c.boundary;
  }
  const double p = static_cast<double>(inside) / static_cast<double>(samples);
  est.value = box_volume * p;
  est.std_error = box_volume * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return est;
}

McEstimate monte_carlo_volume(const EllipsoidSum& scene, std::uint64_t samples, std::uint64_t seed,
                              int threads) {
  return monte_carlo_volume(scene, samples, seed, default_membership_grid(scene.dim()), threads);
}

double polyline_perimeter(const EllipsoidSum& scene, int resolution) {
  if (scene.dim() != 2) throw ValidationError("polyline_perimeter: requires N = 2");
  if (resolution < 3) throw ValidationError("polyline_perimeter: resolution must be at least 3");
  auto point = [&](int k) {
    const double t = 2.0 * std::numbers::pi * k / resolution;
    Vector n(2);
    n << std::cos(t), std::sin(t);
    return sum_boundary_point(scene, n);
  };
  double length = 0.0;
  const Vector first = point(0);
  Vector prev = first;
  for (int k = 1; k < resolution; ++k) {
    Vector cur = point(k);
    length += (cur - prev).norm();
    prev = std::move(cur);
  }
  return length + (first - prev).norm();
}

}  // namespace minksum
