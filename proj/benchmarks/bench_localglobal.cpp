#include <benchmark/benchmark.h>

#include "henselkit/localglobal.hpp"

using namespace henselkit;

namespace {

void bm_symbol_grid(benchmark::State& state) {
  long n = state.range(0);
  for (auto _ : state) {
    int acc = 0;
    for (long a = -n; a <= n; ++a)
      for (long b = -n; b <= n; ++b) {
        if (a == 0 || b == 0) continue;
        for (const place& v : ramified_places(rat(a), rat(b)))
          acc += hilbert_symbol(rat(a), rat(b), v);
      }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_symbol_grid)->Arg(8)->Arg(16);

void bm_decide(benchmark::State& state) {
  conic C{rat(-1), rat(-5)};
  long i = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(global_membership_decide(frac(i, 7), C));
    i = i % 97 + 2;
  }
}
BENCHMARK(bm_decide);

void bm_witness(benchmark::State& state) {
  conic D{rat(1), rat(1)};
  for (auto _ : state) {
    auto w = witness_search(rat(7), D);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(bm_witness);

} // namespace

BENCHMARK_MAIN();
