#ifndef LOGCONCAVE_PARALLEL_HPP
#define LOGCONCAVE_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace logconcave {

// Worker count: hardware concurrency capped by the LOGCONCAVE_THREADS
// environment variable (positive integer; anything else is ignored).
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LOGCONCAVE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return n;
}

// Run fn(begin, end) over a partition of [0, n). Callers must write results
// into index-addressed storage so output is independent of scheduling.
inline void parallel_for(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  const unsigned workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n < 2 * workers) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> threads;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace logconcave

#endif  // LOGCONCAVE_PARALLEL_HPP
