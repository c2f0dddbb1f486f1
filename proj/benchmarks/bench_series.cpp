#include <benchmark/benchmark.h>

#include "henselkit/sampling.hpp"
#include "henselkit/series.hpp"

using namespace henselkit;

namespace {

// dense unit 1 + t + t^2/2 + ... + t^{n}/n truncated at n + 1
puiseux_series dense_unit(const field_desc& fd, long n) {
  std::map<long, field_elem> terms;
  terms[0] = field_elem::one(fd);
  for (long k = 1; k <= n; ++k) terms[k] = field_elem(fd, frac(1, k));
  return puiseux_series(fd, 1, std::move(terms), xrat(n + 1));
}

void bm_mul(benchmark::State& state) {
  field_desc fd = state.range(1) ? field_desc::Fp(10007) : field_desc::Q();
  puiseux_series a = dense_unit(fd, state.range(0));
  puiseux_series b = dense_unit(fd, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mul(a, b));
}
BENCHMARK(bm_mul)->Args({16, 0})->Args({64, 0})->Args({256, 0})->Args({16, 1})->Args({64, 1})->Args({256, 1});

void bm_invert(benchmark::State& state) {
  field_desc fd = state.range(1) ? field_desc::Fp(10007) : field_desc::Q();
  puiseux_series u = dense_unit(fd, state.range(0));
  xrat tgt(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(invert_unit(u, tgt));
}
BENCHMARK(bm_invert)->Args({16, 0})->Args({64, 0})->Args({16, 1})->Args({64, 1});

void bm_val(benchmark::State& state) {
  sampler gen(1);
  std::vector<puiseux_series> pool;
  for (int i = 0; i < 64; ++i) pool.push_back(gen.series(field_desc::Q(), 6));
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(val(pool[i]));
    i = (i + 1) % pool.size();
  }
}
BENCHMARK(bm_val);

void bm_reramify(benchmark::State& state) {
  puiseux_series a = dense_unit(field_desc::Q(), 64);
  for (auto _ : state)
    benchmark::DoNotOptimize(normalize_ram(reramify(a, 6)));
}
BENCHMARK(bm_reramify);

} // namespace

BENCHMARK_MAIN();
