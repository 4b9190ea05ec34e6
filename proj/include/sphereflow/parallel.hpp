#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace sphereflow {

/// Worker cap: SPHEREFLOW_THREADS if set and positive, otherwise the
/// hardware concurrency.
int worker_count();

/// Runs body(k) for k in [0, n), split into contiguous chunks. Each index
/// is handled by exactly one worker, so results never depend on the worker
/// count as long as body(k) only writes to slot k.
template <class Body>
void parallel_for(int n, Body&& body, int min_chunk = 8) {
  const int workers = std::min(worker_count(), std::max(1, n / std::max(1, min_chunk)));
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) body(k);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&body, begin, end] {
      for (int k = begin; k < end; ++k) body(k);
    });
  }
}

}  // namespace sphereflow
