#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace amalgams {

enum class Execution { Serial, Parallel };

/// Runs f(i) for i in [0, n). In parallel mode the indices are handed out to
/// a pool of threads; callers write into per-index slots so the result never
/// depends on the schedule. The exception of the lowest failing index wins.
template <class F>
void parallel_for(std::size_t n, Execution mode, F&& f) {
  if (mode == Execution::Serial || n < 2) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(n, std::max<std::size_t>(2, std::thread::hardware_concurrency()));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace amalgams
