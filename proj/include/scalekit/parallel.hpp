// SPDX-License-Identifier: MIT
#pragma once
/// \file parallel.hpp
/// \brief Index-parallel loop with a SCALEKIT_THREADS cap.
///
/// Work units are addressed by index and must write only to per-index slots,
/// so the result is identical regardless of scheduling or thread count.

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace scalekit {

/// Number of worker threads to use: the SCALEKIT_THREADS environment
/// variable when set (clamped to [1, 512]), otherwise the hardware default.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("SCALEKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v > 512 ? 512 : v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs fn(i) for every i in [0, count). Exceptions from workers are
/// rethrown (first one wins) after all threads join.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t budget = thread_budget();
  const std::size_t nt = budget < count ? budget : count;
  if (nt <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count || failed.load(std::memory_order_relaxed)) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace scalekit
