#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace pamincsp {

/// Worker count: hardware concurrency capped by PA_MINCSP_THREAD_LIMIT, or 1
/// in deterministic mode.
inline unsigned worker_count(bool deterministic) {
  if (deterministic)
    return 1;
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("PA_MINCSP_THREAD_LIMIT")) {
    try {
      long limit = std::stol(env);
      if (limit >= 1)
        n = std::min<unsigned>(n, static_cast<unsigned>(limit));
    } catch (const std::exception &) {
      // an unparsable limit is ignored
    }
  }
  return n;
}

/// Calls body(i) for i in [0, count). Each index runs exactly once; callers
/// write results into per-index slots so the merged output does not depend on
/// scheduling. The first exception is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body &&body) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count)
        return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error)
          error = std::current_exception();
        next.store(count);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w)
    pool.emplace_back(work);
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

} // namespace pamincsp
