#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace satbench {

// Runs fn(i) for i in [0, count) on up to `workers` threads, dynamically
// scheduled. Callers key all randomness and result placement on i, so the
// outcome is identical for any worker count.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(workers), count));
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace satbench
