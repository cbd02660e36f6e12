#pragma once

#include <vector>

#include "pswg/arith.hpp"

namespace pswg {

// Sieve of Eratosthenes over [2, limit] backed by an odd-only bitmap.
// Sieving proceeds in word-aligned segments so that segments are
// independent and can be processed by worker threads without overlap.
class PrimeTable {
 public:
  explicit PrimeTable(u64 limit, unsigned threads = 0);

  u64 limit() const { return limit_; }

  // n <= limit required.
  bool is_prime(u64 n) const;

  // Number of primes p with p <= hi (hi <= limit required).
  u64 count(u64 hi) const;

  std::vector<u64> primes_in(u64 lo, u64 hi) const;

  // Calls fn(p) for every prime p in [lo, hi] in increasing order.
  template <class Fn>
  void for_each_prime(u64 lo, u64 hi, Fn&& fn) const {
    check_range(hi);
    if (lo < 2) lo = 2;
    if (lo > hi) return;
    if (lo <= 2) fn(static_cast<u64>(2));
    u64 n = lo | 1;
    if (n < 3) n = 3;
    for (; n <= hi; n += 2) {
      if (bit_is_prime((n - 1) / 2)) fn(n);
    }
  }

 private:
  void check_range(u64 n) const;
  bool bit_is_prime(u64 idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }

  u64 limit_;
  // Bit i corresponds to the odd number 2i+1; set means prime.
  std::vector<std::uint64_t> words_;
};

}  // namespace pswg
