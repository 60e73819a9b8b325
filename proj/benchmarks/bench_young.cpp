// growth-function hot paths: pointwise evaluation, index estimation, norms
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "folap/fields.hpp"
#include "folap/modulars.hpp"
#include "folap/young.hpp"

using namespace folap;

static YoungFunction pick(int which) {
  switch (which) {
    case 0: return YoungFunction::power(4.0);
    case 1: return YoungFunction::sum_of_powers_normalized(1.0, 3.0, 1.0, 5.0);
    default: return YoungFunction::power_log(3.0);
  }
}

static void BM_density_eval(benchmark::State& state) {
  auto yf = pick(int(state.range(0)));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::vector<double> ts(4096);
  for (double& t : ts) t = U(rng);
  for (auto _ : state) {
    double acc = 0.0;
    for (double t : ts) acc += yf.a(t);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * ts.size());
}
BENCHMARK(BM_density_eval)->Arg(0)->Arg(1)->Arg(2);

static void BM_estimate_indices(benchmark::State& state) {
  auto yf = pick(int(state.range(0)));
  for (auto _ : state) {
    auto idx = estimate_indices(yf);
    benchmark::DoNotOptimize(idx);
  }
}
BENCHMARK(BM_estimate_indices)->Arg(0)->Arg(2);

static void BM_luxemburg_norm(benchmark::State& state) {
  auto yf = pick(int(state.range(0)));
  auto dom = Domain::interval(0.0, 1.0);
  auto g = Grid::make(dom, 1.0 / double(state.range(1)));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  std::vector<double> vals(g->size());
  for (double& v : vals) v = U(rng);
  auto u = grid_field(g, vals);
  for (auto _ : state) {
    double n = luxemburg_norm(
        yf, [&](double lam) { return modular(yf, u.scaled_by(1.0 / lam), dom, *g); });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_luxemburg_norm)->Args({0, 64})->Args({2, 64})->Args({0, 1024});

BENCHMARK_MAIN();
