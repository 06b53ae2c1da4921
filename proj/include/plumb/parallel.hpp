#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace plumb {

/// Splits [0, count) into one contiguous chunk per thread and runs
/// fn(chunk, begin, end) on each. Chunk ids are stable, so callers can merge
/// per-chunk results in order. The first exception is rethrown.
template <typename Fn>
void parallel_chunks(std::uint64_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2 * threads) {
    fn(0u, std::uint64_t{0}, count);
    return;
  }
  const std::uint64_t step = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t begin = std::min(count, t * step);
    const std::uint64_t end = std::min(count, begin + step);
    pool.emplace_back([&, t, begin, end] {
      try {
        fn(t, begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace plumb
