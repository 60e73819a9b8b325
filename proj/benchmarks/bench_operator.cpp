// pointwise operator evaluation cost across schemes and dimensions
#include <benchmark/benchmark.h>

#include "folap/fields.hpp"
#include "folap/nonlocal.hpp"
#include "folap/young.hpp"

using namespace folap;

static void BM_eval_interval(benchmark::State& state) {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto u = distance_field(dom);
  auto sch = QuadratureScheme::for_spacing(1.0 / double(state.range(0)));
  Point x{0.3, 0.0};
  for (auto _ : state) {
    auto ev = eval_pointwise(yf, u, x, 0.5, sch);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_eval_interval)->Arg(20)->Arg(100)->Arg(500);

static void BM_eval_disk(benchmark::State& state) {
  auto yf = YoungFunction::power(4.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 2);
  auto u = distance_field(dom);
  QuadratureScheme sch;
  sch.angular_count = int(state.range(0));
  Point x{0.3, 0.1};
  for (auto _ : state) {
    auto ev = eval_pointwise(yf, u, x, 0.5, sch);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_eval_disk)->Arg(16)->Arg(64)->Arg(256);

static void BM_eval_refined(benchmark::State& state) {
  auto yf = YoungFunction::power_log(3.0);
  auto dom = Domain::ball({0.0, 0.0}, 1.0, 1);
  auto u = distance_field(dom);
  auto sch = QuadratureScheme{};
  if (state.range(0)) sch = sch.refined();
  Point x{0.7, 0.0};
  for (auto _ : state) {
    auto ev = eval_pointwise(yf, u, x, 0.5, sch);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_eval_refined)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
