#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace mlineq {

// Runs body(i) for i in [0, n). With jobs > 1 the index space is split into
// contiguous chunks, one thread each. Callers that want deterministic output
// must write results into a preallocated slot per index; the partitioning
// itself never affects what each index computes.
template <typename Body>
void parallel_for(std::size_t n, int jobs, Body&& body) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(std::max(jobs, 1), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace mlineq
