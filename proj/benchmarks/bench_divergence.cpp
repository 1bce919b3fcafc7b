// Microbenchmarks for the closed-form divergences: these sit in the inner
// loops of packing searches and pairwise distance matrices.
#include <benchmark/benchmark.h>

#include <complex>

#include "gaugepack/divergence.hpp"

using namespace gaugepack;

static void BM_bhatt_scale_du(benchmark::State& state) {
  double du = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bhatt_scale_du(du));
    du += 1e-9;
  }
}
BENCHMARK(BM_bhatt_scale_du);

static void BM_kl_scale_du(benchmark::State& state) {
  double du = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kl_scale_du(du));
    du += 1e-9;
  }
}
BENCHMARK(BM_kl_scale_du);

static void BM_chernoff_sup(benchmark::State& state) {
  double du = 3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(chernoff_scale_sup_du(du));
    du += 1e-9;
  }
}
BENCHMARK(BM_chernoff_sup);

static void BM_bhatt_gaussian(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Vec m1 = Vec::Zero(d), m2 = Vec::Constant(d, cplx(0.3, -0.1));
  Mat c1 = Mat::Identity(d, d), c2 = Mat::Identity(d, d) * cplx(1.7, 0);
  const OutputLaw p(m1, c1), q(m2, c2);
  for (auto _ : state) benchmark::DoNotOptimize(bhatt_gaussian(p, q));
}
BENCHMARK(BM_bhatt_gaussian)->Arg(2)->Arg(4)->Arg(8);

static void BM_avg_bhatt_rayleigh(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  RVec eigs = RVec::LinSpaced(m, 0.1, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(avg_bhatt_rayleigh(eigs, 2, 50.0));
}
BENCHMARK(BM_avg_bhatt_rayleigh)->Arg(2)->Arg(4);

BENCHMARK_MAIN();
