#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace gaugepack {

// Number of worker threads used by parallel loops. Defaults to the hardware
// concurrency; can be capped via the GAUGE_FRONTIER_THREADS environment
// variable (useful for CI determinism checks and constrained machines).
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("GAUGE_FRONTIER_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned long>(v) < hw) hw = static_cast<unsigned>(v);
    if (v >= 1 && static_cast<unsigned long>(v) >= hw) hw = static_cast<unsigned>(v);
  }
  return hw;
}

// Deterministic block map-reduce over [0, n_items).
//
// The range is split into fixed-size blocks. Workers grab blocks dynamically,
// but each block's partial result is stored at its block index and the final
// combine runs sequentially in block order. Floating-point reductions are
// therefore bitwise identical regardless of thread count or scheduling.
//
// `map_block(begin, end) -> T` must be a pure function of the index range.
// `combine(acc, T)` folds the partials left-to-right.
template <typename T, typename MapBlock, typename Combine>
T parallel_block_reduce(std::uint64_t n_items, T init, MapBlock map_block,
                        Combine combine, std::uint64_t block_size = 8192) {
  if (n_items == 0) return init;
  const std::uint64_t n_blocks = (n_items + block_size - 1) / block_size;
  std::vector<T> partials(n_blocks, init);

  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), n_blocks));
  std::atomic<std::uint64_t> next_block{0};
  auto run = [&]() {
    for (;;) {
      const std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
      if (b >= n_blocks) break;
      const std::uint64_t lo = b * block_size;
      const std::uint64_t hi = std::min(lo + block_size, n_items);
      partials[b] = map_block(lo, hi);
    }
  };

  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  T acc = init;
  for (std::uint64_t b = 0; b < n_blocks; ++b) acc = combine(acc, partials[b]);
  return acc;
}

}  // namespace gaugepack
