#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace carnot {

/// Worker count: hardware concurrency capped by CARNOT_THREADS.
unsigned worker_count();

/// Number of chunks used to split `total` items. Depends only on `total`,
/// so chunked results are identical for any worker count.
std::size_t chunk_count(std::size_t total);

/// Index of the chunk starting at `lo`.
inline std::size_t chunk_index(std::size_t lo, std::size_t total) {
  const std::size_t nc = chunk_count(total);
  return (lo * nc + total - 1) / total;
}

/// Runs fn(lo, hi) over fixed chunks of [0, total) and returns the chunk
/// results in chunk order.
template <class Fn>
auto parallel_chunks(std::size_t total, Fn&& fn) {
  using R = decltype(fn(std::size_t{}, std::size_t{}));
  const std::size_t nc = chunk_count(total);
  std::vector<R> out(nc);
  if (nc == 0) return out;
  auto bounds = [&](std::size_t c) {
    return std::pair{total * c / nc, total * (c + 1) / nc};
  };
  const unsigned nw = std::min<std::size_t>(worker_count(), nc);
  if (nw <= 1) {
    for (std::size_t c = 0; c < nc; ++c) {
      auto [lo, hi] = bounds(c);
      out[c] = fn(lo, hi);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nc) return;
      try {
        auto [lo, hi] = bounds(c);
        out[c] = fn(lo, hi);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw - 1);
  for (unsigned i = 1; i < nw; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

/// Calls fn(i) for every i in [0, total).
template <class Fn>
void parallel_for(std::size_t total, Fn&& fn) {
  parallel_chunks(total, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
    return 0;
  });
}

}  // namespace carnot
