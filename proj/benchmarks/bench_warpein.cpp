/** Micro-benchmarks for the hot paths: the first-order system right-hand
 *  side, the compatibility polynomial, the two-route mu diagnostic, full
 *  adaptive integrations, grid verification and stencil weight solves. */
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "warpein/catalog.hpp"
#include "warpein/geometry.hpp"
#include "warpein/residuals.hpp"
#include "warpein/solver.hpp"
#include "warpein/stencil.hpp"

namespace {

using namespace warpein;

const SpaceParams kParams{3, 2, -4.0, -1.0};

IVPState interior_state() {
  return {1.0, std::cosh(1.0), std::sinh(1.0), std::sinh(1.0), std::cosh(1.0)};
}

PointState point_state() {
  PointState s;
  s.t = 1.0;
  s.u = std::cosh(1.0);
  s.du = std::sinh(1.0);
  s.ddu = std::cosh(1.0);
  s.dddu = std::sinh(1.0);
  s.f = std::sinh(1.0);
  s.df = std::cosh(1.0);
  s.ddf = std::sinh(1.0);
  return s;
}

void BM_ivp_rhs(benchmark::State& state) {
  const IVPState s = interior_state();
  for (auto _ : state) benchmark::DoNotOptimize(ivp_rhs(s, kParams));
}
BENCHMARK(BM_ivp_rhs);

void BM_compat_residual(benchmark::State& state) {
  const PointState s = point_state();
  for (auto _ : state) benchmark::DoNotOptimize(residual_compat(s, kParams));
}
BENCHMARK(BM_compat_residual);

void BM_eigen_data(benchmark::State& state) {
  const PointState s = point_state();
  for (auto _ : state) benchmark::DoNotOptimize(eigen_data(s, kParams));
}
BENCHMARK(BM_eigen_data);

void BM_integrate_interior(benchmark::State& state) {
  const IVPState s = interior_state();
  IntegrateOptions opts;
  opts.ode_tol = 1e-10;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(s, kParams, 1.0, 3.0, opts));
}
BENCHMARK(BM_integrate_interior);

void BM_boundary_landing(benchmark::State& state) {
  const IVPState s = interior_state();
  IntegrateOptions opts;
  opts.ode_tol = 1e-10;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(s, kParams, 1.0, -2.0, opts));
}
BENCHMARK(BM_boundary_landing);

void BM_verify_501(benchmark::State& state) {
  const ClosedFormFamily fam = instantiate("hyperbolic-boundary", 3, 2);
  std::vector<double> grid(501);
  for (int i = 0; i < 501; ++i) grid[i] = 0.05 + (3.0 - 0.05) * i / 500.0;
  const Profile prof = sample(fam, grid);
  for (auto _ : state) benchmark::DoNotOptimize(verify(prof, 1e-9));
}
BENCHMARK(BM_verify_501);

void BM_fd_weights(benchmark::State& state) {
  const std::vector<double> nodes = {-0.03, -0.02, -0.01, 0.0,
                                     0.01,  0.02,  0.03,  0.04};
  for (auto _ : state)
    benchmark::DoNotOptimize(fd_weights(0.0, nodes, 4));
}
BENCHMARK(BM_fd_weights);

}  // namespace

BENCHMARK_MAIN();
