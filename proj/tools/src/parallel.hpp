#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace attrbeam::cli {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results must be
/// written to pre-sized slots keyed by i so the outcome is independent of
/// scheduling. The first exception is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        return;
      }
    }
  };
  std::vector<std::thread> workers;
  const std::size_t spawn = jobs < count ? jobs : count;
  workers.reserve(spawn);
  for (std::size_t t = 0; t < spawn; ++t) {
    workers.emplace_back(worker);
  }
  for (std::thread& t : workers) {
    t.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace attrbeam::cli
