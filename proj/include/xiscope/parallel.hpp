#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace xiscope {

/// Worker count: XISCOPE_THREADS if set to a positive integer, otherwise the
/// machine's hardware concurrency (at least 1).
int worker_count();

/// Calls fn(i) for i in [0, n) on up to `threads` workers (0 = worker_count()).
/// Work is handed out by index, so callers that write results to slot i get
/// output independent of scheduling. The exception from the lowest failing
/// index is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  const int requested = threads > 0 ? threads : worker_count();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(requested), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace xiscope
