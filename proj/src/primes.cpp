#include "pswg/primes.hpp"

#include <bit>

#include "pswg/parallel.hpp"

namespace pswg {

namespace {

constexpr u64 kWordsPerSegment = 1u << 14;  // 2^20 odd numbers per segment

// Plain byte sieve for the base primes up to sqrt(limit).
std::vector<u64> base_primes(u64 up_to) {
  std::vector<u64> out;
  if (up_to < 3) return out;
  std::vector<std::uint8_t> comp(up_to + 1, 0);
  for (u64 p = 3; p * p <= up_to; p += 2) {
    if (comp[p]) continue;
    for (u64 q = p * p; q <= up_to; q += 2 * p) comp[q] = 1;
  }
  for (u64 p = 3; p <= up_to; p += 2) {
    if (!comp[p]) out.push_back(p);
  }
  return out;
}

}  // namespace

PrimeTable::PrimeTable(u64 limit, unsigned threads) : limit_(limit) {
  if (limit < 1) throw std::invalid_argument("PrimeTable: limit must be >= 1");
  u64 nbits = (limit + 1) / 2;  // odd numbers 1, 3, ..., <= limit
  u64 nwords = (nbits + 63) / 64;
  words_.assign(nwords, ~std::uint64_t{0});
  // Mask tail bits beyond limit so popcounts stay honest.
  if (nbits % 64 != 0) {
    words_.back() = (~std::uint64_t{0}) >> (64 - nbits % 64);
  }
  words_[0] &= ~std::uint64_t{1};  // 1 is not prime

  auto base = base_primes(isqrt_u64(limit));
  u64 nsegments = (nwords + kWordsPerSegment - 1) / kWordsPerSegment;
  parallel_for(0, nsegments, threads, [&](u64 s0, u64 s1) {
    for (u64 s = s0; s < s1; ++s) {
      u64 w_lo = s * kWordsPerSegment;
      u64 w_hi = std::min(nwords, w_lo + kWordsPerSegment);
      u64 idx_lo = w_lo * 64;          // first odd index in segment
      u64 idx_hi = w_hi * 64;          // one past last
      u64 n_lo = 2 * idx_lo + 1;
      for (u64 p : base) {
        u64 start = p * p;
        if (start > limit) break;
        if (start < n_lo) {
          u64 k = (n_lo + p - 1) / p;
          if (k % 2 == 0) ++k;  // odd multiples only
          start = k * p;
        }
        for (u64 idx = (start - 1) / 2; idx < idx_hi && idx < nbits;
             idx += p) {
          words_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
        }
      }
    }
  });
}

void PrimeTable::check_range(u64 n) const {
  if (n > limit_)
    throw std::invalid_argument("PrimeTable: query above sieve limit");
}

bool PrimeTable::is_prime(u64 n) const {
  check_range(n);
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  return bit_is_prime((n - 1) / 2);
}

u64 PrimeTable::count(u64 hi) const {
  check_range(hi);
  if (hi < 2) return 0;
  u64 total = 1;  // the prime 2
  u64 nbits = std::min((hi + 1) / 2, (limit_ + 1) / 2);
  u64 full_words = nbits / 64;
  for (u64 w = 0; w < full_words; ++w) total += std::popcount(words_[w]);
  if (nbits % 64 != 0) {
    std::uint64_t mask = (~std::uint64_t{0}) >> (64 - nbits % 64);
    total += std::popcount(words_[full_words] & mask);
  }
  return total;
}

std::vector<u64> PrimeTable::primes_in(u64 lo, u64 hi) const {
  std::vector<u64> out;
  for_each_prime(lo, hi, [&](u64 p) { out.push_back(p); });
  return out;
}

}  // namespace pswg
