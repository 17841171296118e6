#include <benchmark/benchmark.h>

#include "stabfv/cu_scheme.hpp"
#include "stabfv/lyapunov.hpp"
#include "stabfv/problems.hpp"
#include "stabfv/simulate.hpp"
#include "stabfv/upwind.hpp"

using namespace stabfv;

namespace {

ProblemConfig config(int id, int cells, int K) {
  ExampleOverrides o;
  o.K = K;
  return make_example(id, 1.0, 1.0 / cells, o);
}

void BM_UpwindStep(benchmark::State& st) {
  const auto c = config(4, static_cast<int>(st.range(0)), 100);
  const Mesh mesh(c.cells);
  const auto ens = uniform_random_ensemble(c.sigma, c.K);
  auto state = initial_state(c, mesh, ens);
  const auto grid = cfl_time_step(c.system, mesh, c.cfl);
  UpwindOptions opt;
  opt.workers = static_cast<int>(st.range(1));
  const UpwindSolver solver(c.system, c.bc, mesh, grid.dt, opt);
  for (auto _ : st) {
    solver.step(state);
    benchmark::DoNotOptimize(state.raw().data());
  }
  st.SetItemsProcessed(st.iterations() * 2 * c.cells * (c.K + 1));
}
BENCHMARK(BM_UpwindStep)->Args({100, 1})->Args({400, 1})->Args({1600, 1})->Args({1600, 4});

void BM_CuStep(benchmark::State& st) {
  const auto c = config(7, static_cast<int>(st.range(0)), 100);
  const Mesh mesh(c.cells);
  const auto ens = uniform_random_ensemble(c.sigma, c.K);
  auto avg = initial_averages(c, mesh, ens);
  const auto grid = cfl_time_step(c.system, mesh, c.cfl);
  CuOptions opt;
  opt.workers = static_cast<int>(st.range(1));
  CuSolver solver(c.system, c.bc, mesh, grid.dt, opt);
  for (auto _ : st) {
    solver.step(avg);
    benchmark::DoNotOptimize(avg.raw().data());
  }
  st.SetItemsProcessed(st.iterations() * 2 * c.cells * (c.K + 1));
}
BENCHMARK(BM_CuStep)->Args({100, 1})->Args({400, 1})->Args({400, 4});

void BM_Lyapunov(benchmark::State& st) {
  const auto c = config(4, static_cast<int>(st.range(0)), 100);
  const Mesh mesh(c.cells);
  const auto ens = uniform_random_ensemble(c.sigma, c.K);
  const auto state = initial_state(c, mesh, ens);
  const auto grid = cfl_time_step(c.system, mesh, c.cfl);
  const auto cb = courant_bounds(c.system, mesh, grid.dt);
  const auto w = admissible_mu(c.bc.kappa, cb.Dmin, cb.Dmax, c.regime, mesh.dx(), c.system.m);
  const auto L = LyapunovFunctional::nodal(w, ens, mesh);
  const int workers = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(L(state, workers));
  st.SetItemsProcessed(st.iterations() * 2 * c.cells * (c.K + 1));
}
BENCHMARK(BM_Lyapunov)->Args({400, 1})->Args({1600, 1})->Args({1600, 4});

}  // namespace
BENCHMARK_MAIN();
