#pragma once

#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace dqpt {

/// Runs fn(i) for i in [0, n) over at most `workers` threads in contiguous
/// chunks. Tasks must be independent; the first exception is rethrown.
inline void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > n) workers = n;
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(static_cast<size_t>(workers));
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int a = w * chunk;
    const int b = std::min(n, a + chunk);
    pool.emplace_back([&fn, &errs, w, a, b]() {
      try {
        for (int i = a; i < b; ++i) fn(i);
      } catch (...) {
        errs[static_cast<size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

/// Pairwise (cascade) summation; the reduction tree depends only on the
/// element order, so sums are reproducible across worker counts.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 8) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace dqpt
