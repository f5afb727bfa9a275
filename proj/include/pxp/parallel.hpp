#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pxp {

/// Number of workers to use when the caller does not care.
inline int default_workers() {
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

/// Runs body(i) for i in [0, count) over `workers` threads, each owning one
/// contiguous block of indices. Callers write results by index, so output
/// order never depends on scheduling. The first exception thrown by any
/// worker is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body) {
  const std::size_t w = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), 1,
                                                std::max<std::size_t>(count, 1));
  if (w == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    const std::size_t first = count * t / w;
    const std::size_t last = count * (t + 1) / w;
    threads.emplace_back([&, t, first, last] {
      try {
        for (std::size_t i = first; i < last; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace pxp
