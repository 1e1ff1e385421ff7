#include <benchmark/benchmark.h>

#include "escat/cgo.hpp"
#include "escat/forward.hpp"
#include "escat/green.hpp"
#include "escat/specfun.hpp"

using namespace escat;

namespace {

const LameParameters kLame{1.0, 1.0};

void bm_hankel(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::hankel1(0, x));
    benchmark::DoNotOptimize(specfun::hankel1(1, x));
    x = x < 80.0 ? x + 0.1 : 0.37;
  }
}
BENCHMARK(bm_hankel);

void bm_green_tensor(benchmark::State& state) {
  const auto ctx = wavenumbers(kLame, 2.0 * M_PI);
  const Vec2 y(0.1, -0.2);
  Vec2 x(1.0, 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(green_tensor(x, y, kLame, ctx));
    x.x() = x.x() < 5.0 ? x.x() + 1e-3 : 1.0;
  }
}
BENCHMARK(bm_green_tensor);

void bm_incomplete_gamma(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::incomplete_gamma(3.5, x));
    x = x < 50.0 ? x + 0.25 : 0.0;
  }
}
BENCHMARK(bm_incomplete_gamma);

void bm_sector_integral(benchmark::State& state) {
  const geometry::Cone2D cone(Vec2(0, 0), Vec2(1, 0), M_PI / 4.0);
  const auto [p, delta0] = geometry::direction_and_delta0(cone);
  const auto params = cgo::make_cgo(cone.apex, p, rot90(p), static_cast<double>(state.range(0)),
                                    1.0);
  for (auto _ : state) benchmark::DoNotOptimize(cgo::sector_integral(cone, params));
}
BENCHMARK(bm_sector_integral)->Arg(10)->Arg(160);

void bm_solve(benchmark::State& state) {
  const auto ctx = wavenumbers(kLame, 2.0 * M_PI);
  const auto wave = IncidentWave::plane({1.0, 0.0}, {0.5, 0.0}, 0.4, ctx);
  const auto density = DensityField::constant(
      geometry::ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 0.5);
  const auto grid = SolverGrid::build(density, ctx, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve(density, wave, kLame, grid));
}
BENCHMARK(bm_solve)->Arg(12)->Arg(20)->Arg(28)->Unit(benchmark::kMillisecond);

void bm_far_field(benchmark::State& state) {
  const auto ctx = wavenumbers(kLame, 2.0 * M_PI);
  const auto wave = IncidentWave::plane({1.0, 0.0}, {0.5, 0.0}, 0.4, ctx);
  const auto density = DensityField::constant(
      geometry::ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 0.5);
  const auto sol = solve(density, wave, kLame, SolverGrid::build(density, ctx, 20));
  for (auto _ : state) benchmark::DoNotOptimize(far_field(sol, 64));
}
BENCHMARK(bm_far_field)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
