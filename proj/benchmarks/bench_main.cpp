#include <benchmark/benchmark.h>

#include "specdiv/divisors.hpp"
#include "specdiv/invariants.hpp"
#include "specdiv/qeta.hpp"

using namespace specdiv;

static void BM_EnumerateTypes(benchmark::State& state) {
  DiscriminantForm form(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_types(form));
  }
}
BENCHMARK(BM_EnumerateTypes)->Args({12, 1})->Args({12, 2})->Args({8, 8});

static void BM_CuspClasses(benchmark::State& state) {
  DiscriminantForm form(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cusp_classes(form));
  }
}
BENCHMARK(BM_CuspClasses)->Args({6, 1})->Args({4, 2});

static void BM_TypesSpan(benchmark::State& state) {
  DiscriminantForm form(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(types_span(form));
  }
}
BENCHMARK(BM_TypesSpan)->Args({12, 1})->Args({6, 6});

static void BM_InvariantDim(benchmark::State& state) {
  DiscriminantForm form(state.range(0), state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(invariant_space_dim(form));
  }
}
BENCHMARK(BM_InvariantDim)->Args({6, 1})->Args({4, 2});

static void BM_EtaExpansion(benchmark::State& state) {
  Rat trunc(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eta_expansion(Rat(1), Rat(0), trunc));
  }
}
BENCHMARK(BM_EtaExpansion)->Arg(100)->Arg(400);

BENCHMARK_MAIN();
