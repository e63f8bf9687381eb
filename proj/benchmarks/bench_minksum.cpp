#include <benchmark/benchmark.h>

#include "minksum/bounds.hpp"
#include "minksum/curvature.hpp"
#include "minksum/oracle.hpp"
#include "minksum/surface_integrals.hpp"
#include "scenes.hpp"

namespace {

using namespace minksum;

EllipsoidSum scene_for(int dim, int terms) {
  testing::Rng rng(77);
  return testing::random_scene(rng, dim, terms);
}

void bm_boundary_point(benchmark::State& state) {
  const auto scene = scene_for(static_cast<int>(state.range(0)), 3);
  testing::Rng rng(5);
  const Vector n = testing::random_unit(rng, scene.dim());
  for (auto _ : state) benchmark::DoNotOptimize(sum_boundary_point(scene, n));
}
BENCHMARK(bm_boundary_point)->Arg(2)->Arg(3)->Arg(5);

void bm_curvatures(benchmark::State& state) {
  const auto scene = scene_for(static_cast<int>(state.range(0)), 3);
  testing::Rng rng(6);
  const Vector n = testing::random_unit(rng, scene.dim());
  for (auto _ : state) benchmark::DoNotOptimize(principal_curvatures(scene, n));
}
BENCHMARK(bm_curvatures)->Arg(2)->Arg(3)->Arg(5);

void bm_divergence_volume(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto scene = scene_for(dim, 2);
  const auto quad = build_quadrature(dim, default_resolution(dim));
  for (auto _ : state) benchmark::DoNotOptimize(volume_divergence(scene, quad));
}
BENCHMARK(bm_divergence_volume)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void bm_minvol_outer(benchmark::State& state) {
  const auto scene = scene_for(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(minvol_outer(scene).matrix.determinant());
}
BENCHMARK(bm_minvol_outer)->Args({2, 2})->Args({3, 3})->Args({3, 4})->Unit(benchmark::kMillisecond);

void bm_monte_carlo(benchmark::State& state) {
  const auto scene = scene_for(2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_volume(scene, 100000, 1).value);
}
BENCHMARK(bm_monte_carlo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
