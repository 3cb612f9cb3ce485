#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace vexp {

/// Worker count: VEXP_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("VEXP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(worker, begin, end) on contiguous chunks of [0, n). Chunk
/// boundaries depend only on n and the worker count.
template <class Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = n * w / workers;
    const std::size_t e = n * (w + 1) / workers;
    pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace vexp
