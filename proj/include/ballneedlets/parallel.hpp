#pragma once

// Static-partition parallel loop. Each index is processed exactly once and by
// one thread, so results written per index are deterministic.

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ballneedlets {

/// Worker count: BALLNEEDLETS_THREADS if set and positive, else the hardware count.
inline int thread_count() {
  if (const char* env = std::getenv("BALLNEEDLETS_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

template <typename Index, typename F>
void parallel_for(Index n, F&& body, Index min_chunk = 64) {
  const int workers = thread_count();
  if (workers <= 1 || n <= min_chunk) {
    for (Index i = 0; i < n; ++i) body(i);
    return;
  }
  const Index chunks = std::min<Index>(workers, (n + min_chunk - 1) / min_chunk);
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex guard;
  for (Index c = 0; c < chunks; ++c) {
    pool.emplace_back([&, c] {
      const Index lo = n * c / chunks, hi = n * (c + 1) / chunks;
      try {
        for (Index i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ballneedlets
