#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace ctrack::detail {

// Splits [0, n) into contiguous chunks, one per worker. fn(begin, end) must
// only write state owned by its own range.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    pool.emplace_back([&fn, begin, end = std::min(n, begin + chunk)] { fn(begin, end); });
  }
}

}  // namespace ctrack::detail
