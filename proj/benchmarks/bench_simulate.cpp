// Monte Carlo loop benchmarks: the per-trial decode cost dominates the
// verifier's runtime budget.
#include <benchmark/benchmark.h>

#include "gaugepack/channel.hpp"
#include "gaugepack/packing.hpp"
#include "gaugepack/simulate.hpp"

using namespace gaugepack;

static void BM_ml_decode_scale(benchmark::State& state) {
  const std::vector<double> v = {1.0, 3.0, 9.0, 27.0};
  double e = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_decode_scale(v, e, 2));
    e += 1e-6;
  }
}
BENCHMARK(BM_ml_decode_scale);

static void BM_simulate_pe_fastfading(benchmark::State& state) {
  SimConfig cfg;
  cfg.spec.kind = ChannelKind::FastFading;
  cfg.spec.N = 2;
  cfg.spec.rho = 1e4;
  cfg.codebook = scale_frontier(4, 1e4, 2).certificate;
  cfg.n = 1;
  cfg.trials = state.range(0);
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_pe(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_pe_fastfading)->Arg(10000)->Arg(100000);

static void BM_simulate_pe_block(benchmark::State& state) {
  ChannelSpec spec;
  spec.kind = ChannelKind::BlockFading;
  spec.M = 2;
  spec.N = 2;
  spec.T = 4;
  spec.rho = 100.0;
  SimConfig cfg;
  cfg.spec = spec;
  cfg.codebook = random_input_codebook(spec, 4, 7);
  cfg.n = 1;
  cfg.trials = state.range(0);
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_pe(cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_simulate_pe_block)->Arg(10000);

static void BM_verify_avg_bhatt(benchmark::State& state) {
  Mat d = Mat::Constant(2, 2, cplx(0.3, 0.1));
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_avg_bhatt(d, 2, 50.0, state.range(0), 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_verify_avg_bhatt)->Arg(10000);
