// Serial against OpenMP for the three parallel kernels.
#include <benchmark/benchmark.h>

#include <memory>

#include "egh/borsuk.hpp"
#include "egh/escape.hpp"
#include "egh/gh.hpp"
#include "egh/region.hpp"
#include "egh/scenarios.hpp"

using namespace egh;

static void BM_EscapeNormTable(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  auto C = std::make_shared<CyclicGroup>(4096, CyclicGroup::Metric::Arc);
  Region A = finite_region(C, [&] {
    std::vector<Elem> m;
    for (int k = -200; k <= 300; ++k) m.push_back(Elem{static_cast<double>((k + 4096) % 4096)});
    return m;
  }());
  auto elems = *C->elements();
  for (auto _ : state) benchmark::DoNotOptimize(escape_norm_table(*C, A, elems, parallel));
}
BENCHMARK(BM_EscapeNormTable)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_GhOracle(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  Triple X = collapsing_sphere(1, 1, 5);
  Triple Y = collapsing_sphere(2, 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(pointed_gh_oracle(X.X(), Y.X(), parallel));
}
BENCHMARK(BM_GhOracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_FindNearZero(benchmark::State& state) {
  const bool parallel = state.range(0) != 0;
  auto tri = std::make_shared<const SymmetricTriangulation>(build_triangulation(4, 3));
  OddMapSample s = random_odd_sample(tri, 2, 7);
  for (auto _ : state) benchmark::DoNotOptimize(find_near_zero(s, parallel));
}
BENCHMARK(BM_FindNearZero)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
