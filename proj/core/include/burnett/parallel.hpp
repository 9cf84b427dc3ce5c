#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace burnett {

/// Hardware-derived default worker count (>= 1).
inline int default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Run fn(i) for i in [0, n) on up to `workers` threads. Each index is
/// processed exactly once; indices must write to disjoint state. Results are
/// independent of the worker count as long as fn(i) itself is deterministic.
inline void parallel_for(std::int64_t n, int workers,
                         const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  workers = std::max(1, static_cast<int>(std::min<std::int64_t>(workers, n)));
  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  std::mutex err_mu;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= n || failed.load()) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          failed.store(true);
          break;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace burnett
