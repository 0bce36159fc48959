#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace xorcodes {

/// 0 means "use the hardware concurrency".
inline unsigned resolve_threads(unsigned requested) noexcept
{
  if (requested != 0)
    return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(i) for every i in [0, count). Work items are claimed dynamically,
/// so callers must make each item's result independent of the worker that ran it.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn)
{
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
      pool.emplace_back(work);
    work();
  }
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace xorcodes
