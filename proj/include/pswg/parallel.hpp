#pragma once

#include <functional>
#include <thread>
#include <vector>

#include "pswg/arith.hpp"

namespace pswg {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Splits [begin, end) into one contiguous chunk per worker and runs
// chunk_fn(chunk_begin, chunk_end) on each.  Chunk boundaries depend only
// on the range and the worker count, so any per-chunk partial results the
// caller merges in chunk order are reproducible.
inline void parallel_for(u64 begin, u64 end, unsigned threads,
                         const std::function<void(u64, u64)>& chunk_fn) {
  if (begin >= end) return;
  unsigned n = resolve_threads(threads);
  u64 total = end - begin;
  if (n <= 1 || total < 2) {
    chunk_fn(begin, end);
    return;
  }
  if (n > total) n = static_cast<unsigned>(total);
  std::vector<std::thread> pool;
  pool.reserve(n);
  u64 base = total / n, rem = total % n;
  u64 at = begin;
  for (unsigned i = 0; i < n; ++i) {
    u64 len = base + (i < rem ? 1 : 0);
    u64 lo = at, hi = at + len;
    at = hi;
    pool.emplace_back([&chunk_fn, lo, hi] { chunk_fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace pswg
