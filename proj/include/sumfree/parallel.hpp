#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sumfree {

/**
 * Runs fn(i) for every shard i in [0, shards) on up to `threads` workers.
 *
 * Shards are claimed dynamically, so callers must write results into a slot
 * keyed by shard index and merge in index order; totals are then identical for
 * every thread count. The first exception thrown by any shard is rethrown.
 */
template <class Fn>
void run_shards(std::size_t shards, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || shards <= 1) {
    for (std::size_t i = 0; i < shards; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < shards; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(shards));
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sumfree
