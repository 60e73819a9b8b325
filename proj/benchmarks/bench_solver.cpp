// assembly and energy-descent cost on 1-d and 2-d grids
#include <benchmark/benchmark.h>

#include <vector>

#include "folap/fields.hpp"
#include "folap/solver.hpp"
#include "folap/young.hpp"

using namespace folap;

static void BM_assemble_1d(benchmark::State& state) {
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  double h = 2.0 / double(state.range(0));
  auto yf = YoungFunction::power(4.0);
  for (auto _ : state) {
    auto pb = assemble(dom, Grid::make(dom, h), yf, 0.5);
    benchmark::DoNotOptimize(pb.pair_w.data());
  }
}
BENCHMARK(BM_assemble_1d)->Arg(100)->Arg(400)->Arg(1600);

static void BM_energy_gradient(benchmark::State& state) {
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  double h = 2.0 / double(state.range(0));
  auto pb = assemble(dom, Grid::make(dom, h), YoungFunction::power(4.0), 0.5);
  std::vector<double> u(pb.interior.size(), 0.1), grad;
  for (auto _ : state) {
    energy_gradient(pb, u, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_energy_gradient)->Arg(100)->Arg(400)->Arg(1600);

static void BM_torsion_solve(benchmark::State& state) {
  auto dom = Domain::ball({0.0, 0.0}, 1.0, int(state.range(1)));
  double h = 2.0 / double(state.range(0));
  auto yf = YoungFunction::power(4.0);
  for (auto _ : state) {
    auto sol = solve_torsion(1.0, dom, yf, 0.5, Grid::make(dom, h));
    benchmark::DoNotOptimize(sol.energy);
  }
}
BENCHMARK(BM_torsion_solve)->Args({50, 1})->Args({200, 1})->Args({20, 2});

BENCHMARK_MAIN();
