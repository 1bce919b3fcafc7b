// Packing-layer benchmarks: threshold counts, frontiers, pairwise distance
// matrices, and the randomized Grassmannian bounds.
#include <benchmark/benchmark.h>

#include "gaugepack/channel.hpp"
#include "gaugepack/packing.hpp"

using namespace gaugepack;

namespace {

ChannelSpec fast_fading(int n_rx, double rho) {
  ChannelSpec s;
  s.kind = ChannelKind::FastFading;
  s.N = n_rx;
  s.rho = rho;
  return s;
}

}  // namespace

static void BM_scale_pack_count(benchmark::State& state) {
  const DivKind div = static_cast<DivKind>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(scale_pack_count(0.5, 1e9, 2, div));
}
BENCHMARK(BM_scale_pack_count)->Arg(0)->Arg(1)->Arg(2);

static void BM_scale_frontier(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(scale_frontier(state.range(0), 1e9, 2));
}
BENCHMARK(BM_scale_frontier)->Arg(4)->Arg(64)->Arg(4096);

static void BM_pairwise_distances(benchmark::State& state) {
  const ChannelSpec spec = fast_fading(2, 1e6);
  const Codebook cb =
      random_input_codebook(spec, state.range(0), 7);
  for (auto _ : state)
    benchmark::DoNotOptimize(pairwise_distances(spec, cb));
}
BENCHMARK(BM_pairwise_distances)->Arg(16)->Arg(64)->Arg(256);

static void BM_greedy_maxmin(benchmark::State& state) {
  const ChannelSpec spec = fast_fading(2, 1e6);
  const Codebook pool = random_input_codebook(spec, 128, 7);
  const RMat dist = pairwise_distances(spec, pool);
  for (auto _ : state)
    benchmark::DoNotOptimize(greedy_maxmin(dist, 16, 1));
}
BENCHMARK(BM_greedy_maxmin);

static void BM_grassmann_frontier(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(
        grassmann_frontier_bounds(2, 2, 4, 1e6, state.range(0), 2, 1));
}
BENCHMARK(BM_grassmann_frontier)->Arg(8)->Arg(32);
