#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace radonlab {

/// Worker count: the request (0 = hardware concurrency), capped by the
/// RADONLAB_THREADS environment variable when set. Always >= 1.
unsigned worker_count(unsigned requested = 0);

/// Splits [0, n) into `workers` contiguous blocks and runs fn(worker, begin, end)
/// on each, one thread per block. Block boundaries depend only on n and workers.
template <typename Fn>
void parallel_blocks(unsigned workers, std::size_t n, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    fn(0u, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace radonlab
