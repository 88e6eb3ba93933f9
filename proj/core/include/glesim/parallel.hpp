#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace glesim {

// Static block partition over [0, n). Each index is processed exactly once;
// workers own disjoint ranges so no synchronization is needed beyond join.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t w = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += w) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

} // namespace glesim
