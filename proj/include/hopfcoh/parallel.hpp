#pragma once

// Minimal work-sharing helper for the bulk verification sweeps.  The thread
// count comes from HOPFCOH_THREADS (default: hardware concurrency).  Work
// items must be independent and thread-safe; results must not depend on
// execution order.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hopfcoh {

inline unsigned num_threads() {
  if (const char* s = std::getenv("HOPFCOH_THREADS")) {
    char* end = nullptr;
    long n = std::strtol(s, &end, 10);
    if (end != s && n >= 1) return static_cast<unsigned>(n);
  }
  unsigned n = std::thread::hardware_concurrency();
  return n ? n : 1;
}

inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  const unsigned t = num_threads();
  if (t <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(
      std::min<size_t>(t, n));
  pool.reserve(workers);
  for (unsigned k = 0; k < workers; ++k) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hopfcoh
