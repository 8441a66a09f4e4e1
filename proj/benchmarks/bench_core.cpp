#include <benchmark/benchmark.h>

#include "tsurg/decomposition.hpp"
#include "tsurg/hypergraph.hpp"
#include "tsurg/matrix.hpp"
#include "tsurg/patch_library.hpp"
#include "tsurg/surgery.hpp"
#include "tsurg/tensor_ops.hpp"

using namespace tsurg;

static void BM_OddCycle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(odd_cycle_decomposition(k));
}
BENCHMARK(BM_OddCycle)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_VerifyOddCycle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Decomposition d = odd_cycle_decomposition(k);
  const SparseTensor t = graph_tensor(cycle(k));
  for (auto _ : state) benchmark::DoNotOptimize(verify(d, t).equal);
}
BENCHMARK(BM_VerifyOddCycle)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_C5Dim4(benchmark::State& state) {
  for (auto _ : state) {
    PatchLibrary lib = PatchLibrary::with_defaults();
    benchmark::DoNotOptimize(c5_dim4_decomposition(lib));
  }
}
BENCHMARK(BM_C5Dim4)->Unit(benchmark::kMillisecond);

static void BM_MaxCutApexInsertion(benchmark::State& state) {
  const Hypergraph h = apex_insertion_graph();
  for (auto _ : state) benchmark::DoNotOptimize(max_cut(h));
}
BENCHMARK(BM_MaxCutApexInsertion);

static void BM_FlatteningRankCycle(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const Hypergraph h = cycle(k);
  const RationalMatrix m = flatten(graph_tensor(h), max_cut(h).side);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_rank(m));
}
BENCHMARK(BM_FlatteningRankCycle)->Arg(5)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
