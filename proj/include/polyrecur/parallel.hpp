#ifndef POLYRECUR_PARALLEL_HPP
#define POLYRECUR_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace polyrecur {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [0, total) into fixed-size blocks and hands each block index with
// its half-open range to fn. Block boundaries do not depend on the worker
// count, so callers that fold per-block results in block order get the same
// answer for any parallelism level.
template <typename Fn>
void run_blocks(long total, long block_size, int workers, Fn&& fn) {
  if (total <= 0) return;
  const long nblocks = (total + block_size - 1) / block_size;
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        long b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= nblocks) return;
        long lo = b * block_size;
        long hi = std::min(total, lo + block_size);
        fn(b, lo, hi);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  int w = static_cast<int>(std::min<long>(resolve_workers(workers), nblocks));
  if (w <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace polyrecur

#endif  // POLYRECUR_PARALLEL_HPP
