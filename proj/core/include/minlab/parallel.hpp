#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace minlab {

// Process-wide bound on worker threads (the CLI's --threads flag).
inline std::size_t& thread_limit() {
  static std::size_t limit = 1;
  return limit;
}

// Calls fn(i) for i in [0, n) on up to thread_limit() threads. Each index is
// visited exactly once; results must be written to per-index slots so the
// outcome does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_limit(), n / 1024 + 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::size_t begin = n * w / workers, end = n * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace minlab
