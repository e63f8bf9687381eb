#pragma once

#include <cstdint>

#include "minksum/geometry.hpp"
#include "minksum/sphere_quadrature.hpp"

namespace minksum {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;   // V_box sqrt(p (1 - p) / samples)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t boundary_count = 0;  // counted as inside, reported for diagnostics
};

/// Samples per independent substream.
inline constexpr std::uint64_t kMonteCarloBatch = 65536;

/// Rejection sampling in the axis-aligned box of the minimum-volume outer
/// ellipsoid.
///
/// Stream contract: batch b draws from std::mt19937_64 seeded with
/// splitmix64(seed + b), coordinates in order, each uniform built from the top
/// 53 bits of one draw. The last batch is truncated. Counts are merged in batch
/// order, so `threads` does not change the result.
McEstimate monte_carlo_volume(const EllipsoidSum& scene, std::uint64_t samples, std::uint64_t seed,
                              const SphereQuadrature& membership_grid, int threads = 1);

/// Same with the default membership grid: 720 directions for N = 2, 64^2 for N = 3.
McEstimate monte_carlo_volume(const EllipsoidSum& scene, std::uint64_t samples, std::uint64_t seed,
                              int threads = 1);

/// Length of the closed polyline through sum_boundary_point at `resolution`
/// equally spaced normals.
double polyline_perimeter(const EllipsoidSum& scene, int resolution);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace minksum
