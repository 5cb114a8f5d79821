// Distributed under the MIT License.
// See LICENSE for details.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

/// \file
/// Global worker-count knob and a join-only parallel loop for partitioning
/// independent node ranges. All parallelized loops in this library write to
/// disjoint index ranges of preallocated storage, so no synchronization
/// beyond the final join is needed.

namespace rotstar::par {

namespace detail {
inline int& worker_count_storage() {
  static int count = 0;  // 0 = uninitialized
  return count;
}
}  // namespace detail

/// Resolves the worker count: explicit setting, else ROTSTAR_WORKERS env
/// variable, else hardware concurrency (at least 1).
inline int workers() {
  int& count = detail::worker_count_storage();
  if (count > 0) {
    return count;
  }
  if (const char* env = std::getenv("ROTSTAR_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      count = parsed;
      return count;
    }
  }
  count = std::max(1u, std::thread::hardware_concurrency());
  return count;
}

/// Overrides the worker count for the process (n <= 0 resets to automatic).
inline void set_workers(int n) {
  detail::worker_count_storage() = std::max(0, n);
}

/// Runs body(i) for i in [begin, end), partitioned contiguously across the
/// configured workers. Runs inline when a single worker suffices.
inline void parallel_for(long begin, long end,
                         const std::function<void(long)>& body) {
  const long n = end - begin;
  if (n <= 0) {
    return;
  }
  const int nw = std::min<long>(workers(), n);
  if (nw <= 1) {
    for (long i = begin; i < end; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const long chunk = (n + nw - 1) / nw;
  for (int w = 0; w < nw; ++w) {
    const long lo = begin + w * chunk;
    const long hi = std::min(end, lo + chunk);
    if (lo >= hi) {
      break;
    }
    pool.emplace_back([lo, hi, &body] {
      for (long i = lo; i < hi; ++i) {
        body(i);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace rotstar::par
