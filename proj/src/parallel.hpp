#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ncphase {

// Worker count: hardware concurrency, capped by NCPHASE_THREADS when set.
inline unsigned worker_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NCPHASE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Runs body(i) for i in [0, n). Each index is handled by exactly one thread and
// results are expected to be written to slot i, so output order never depends
// on scheduling. The first exception thrown by any worker is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ncphase
