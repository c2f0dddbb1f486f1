#include <benchmark/benchmark.h>

#include "henselkit/sampling.hpp"

using namespace henselkit;

namespace {

void bm_smooth_lift(benchmark::State& state) {
  field_desc fd = state.range(1) ? field_desc::Fp(5) : field_desc::Q();
  sampler gen(7);
  sampler::smooth_instance inst = gen.planted_smooth(fd, unsigned(state.range(0)));
  lift_options lo;
  lo.target = xrat(24);
  for (auto _ : state) benchmark::DoNotOptimize(smooth_lift(inst.F, inst.x, lo));
}
BENCHMARK(bm_smooth_lift)->Args({1, 0})->Args({2, 0})->Args({3, 0})->Args({1, 1})->Args({2, 1})->Args({3, 1});

void bm_combine_chain(benchmark::State& state) {
  sampler gen(8);
  std::vector<admissible_quadruple> pool;
  for (int i = 0; i < 32; ++i) pool.push_back(gen.quadruple());
  for (auto _ : state) {
    admissible_quadruple acc = pool[0];
    for (size_t i = 1; i + 1 < pool.size(); i += 2)
      acc = combine_admissible_smooth(acc, {pool[i], pool[i + 1]});
    benchmark::DoNotOptimize(derive_greenberg_constants(acc));
  }
}
BENCHMARK(bm_combine_chain);

void bm_certify(benchmark::State& state) {
  // (X - 1)(X - 2): probes terminate instead of expanding forever, so this
  // times the decision machinery rather than a root-budget exhaustion
  field_desc Q = field_desc::Q();
  series_poly f(Q, 1);
  f.add_term({2}, puiseux_series::constant(field_elem::one(Q)));
  f.add_term({1}, puiseux_series::constant(field_elem(Q, rat(-3))));
  f.add_term({0}, puiseux_series::constant(field_elem(Q, rat(2))));
  poly_system F{{f}};
  certify_options co;
  co.samples = long(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(certify_triple(F, {1, 1, 0, 1}, co));
}
BENCHMARK(bm_certify)->Arg(10)->Arg(40);

} // namespace

BENCHMARK_MAIN();
