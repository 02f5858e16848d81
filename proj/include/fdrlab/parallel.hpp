#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fdrlab {

// Effective worker count: a positive request wins, else the FDRLAB_THREADS
// environment variable, else the hardware concurrency.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, count). Work items must write only to their own
// slots; reductions stay with the caller so results never depend on the
// thread count.
template <class Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  const int workers = std::min(resolve_threads(threads), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  const int chunk = std::max(1, count / (workers * 16));

  auto worker = [&] {
    try {
      for (;;) {
        const int begin = next.fetch_add(chunk, std::memory_order_relaxed);
        if (begin >= count || failed.load(std::memory_order_relaxed)) return;
        const int end = std::min(count, begin + chunk);
        for (int i = begin; i < end; ++i) fn(i);
      }
    } catch (...) {
      const std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      failed.store(true, std::memory_order_relaxed);
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace fdrlab
