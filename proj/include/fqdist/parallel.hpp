#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace fqdist {

// Static-chunk parallel for. Each index is processed by exactly one worker
// and workers write to disjoint slots, so results are identical for any
// worker count. Exceptions from workers are rethrown on the caller thread.
inline void parallel_for(std::uint64_t n, unsigned workers,
                         const std::function<void(std::uint64_t begin, std::uint64_t end)>& body) {
  if (workers <= 1 || n < 2 * workers) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = n * w / workers;
    const std::uint64_t end = n * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace fqdist
