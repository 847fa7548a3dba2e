#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qpbasis {

// Global thread budget: --threads flag > QPBASIS_THREADS > hardware.
inline int default_thread_budget() {
  if (const char* env = std::getenv("QPBASIS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

inline int resolve_threads(int requested) {
  return requested >= 1 ? requested : default_thread_budget();
}

// Runs f(i) for i in [0, n) on up to `threads` workers. Work items must not
// depend on execution order; results are expected to be merged by index so
// output stays deterministic under any schedule.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qpbasis
