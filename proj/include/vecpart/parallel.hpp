#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace vecpart {

inline std::size_t default_thread_count() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

// Runs fn(begin, end) over a contiguous split of [0, n). Callers must write
// disjoint outputs (or reduce order-independent integer partials), so the
// result is identical for every thread count.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  constexpr std::size_t kMinPerWorker = 1024;
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(std::max<std::size_t>(threads, 1), std::max<std::size_t>(n / kMinPerWorker, 1));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = n / workers;
  const std::size_t extra = n % workers;
  std::size_t begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t end = begin + chunk + (w < extra ? 1 : 0);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace vecpart
