#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace walklis {

// Deterministic block-parallel map: items are split into fixed-size blocks,
// each block fills its own Partial, and the caller merges partials in block
// order. The partition depends only on block_size, never on the thread
// count, so any thread count yields identical merged results.
template <typename Partial, typename Body>
std::vector<Partial> map_blocks(std::int64_t items, std::int64_t block_size, int threads,
                                Body&& body) {
  if (block_size < 1) block_size = 1;
  const std::int64_t nblocks = items <= 0 ? 0 : (items + block_size - 1) / block_size;
  std::vector<Partial> partials(static_cast<std::size_t>(nblocks));
  if (nblocks == 0) return partials;

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;

  auto work = [&] {
    try {
      for (;;) {
        const std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= nblocks || failed.load(std::memory_order_relaxed)) return;
        const std::int64_t lo = b * block_size;
        const std::int64_t hi = std::min(items, lo + block_size);
        for (std::int64_t i = lo; i < hi; ++i) body(i, partials[static_cast<std::size_t>(b)]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return partials;
}

}  // namespace walklis
