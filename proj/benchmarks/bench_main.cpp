#include <benchmark/benchmark.h>

#include "diagq/residue.hpp"

using namespace diagq;

static void BM_Jacobi(benchmark::State& state) {
  SplitMix64 rng(1);
  for (auto _ : state) {
    i64 a = (i64)(rng.next() % 100000) - 50000;
    i64 n = 2 * (i64)(rng.next() % 50000) + 1;
    benchmark::DoNotOptimize(jacobi(a, n));
  }
}
BENCHMARK(BM_Jacobi);

BENCHMARK_MAIN();
