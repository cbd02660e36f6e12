#include "pswg/represent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "pswg/fft.hpp"
#include "pswg/parallel.hpp"
#include "pswg/ps_set.hpp"

namespace pswg {

u64 RepresentationQuery::scaled_target() const {
  if (n0 % 24 != 5)
    throw std::invalid_argument("representation: target must be 5 mod 24");
  ResidueData zw = residue_data(ctx.W);
  u64 sum = 0;
  for (u64 b : offsets) {
    if (b >= ctx.W || !zw.contains(b))
      throw std::invalid_argument("representation: offsets must be unit squares mod W");
    sum += b;
  }
  if (sum % ctx.W != n0 % ctx.W)
    throw std::invalid_argument("representation: offset sum incongruent to target");
  if (n0 <= sum)
    throw std::invalid_argument("representation: target too small for offsets");
  u64 scaled = (n0 - sum) / ctx.W;
  if (2 * scaled <= ctx.N || scaled >= ctx.N)
    throw std::invalid_argument("representation: rescaled target outside (N/2, N)");
  return scaled;
}

std::vector<double> convolve_five(const std::array<const WeightedSequence*, 5>& fs) {
  u64 n_len = fs[0]->length();
  for (const auto* f : fs) {
    if (f->length() != n_len)
      throw std::invalid_argument("convolve_five: sequence lengths differ");
  }
  u64 need = 5 * n_len + 5;
  u64 m = std::bit_ceil(need);
  if (m > (u64{1} << 26))
    throw std::runtime_error("convolve_five: grid exceeds supported size");
  std::vector<std::complex<double>> prod;
  for (const auto* f : fs) {
    std::vector<double> padded(m, 0.0);
    std::copy(f->values.begin(), f->values.end(), padded.begin());
    auto spec = fft::real_forward(padded);
    if (prod.empty()) {
      prod = std::move(spec);
    } else {
      for (u64 k = 0; k < prod.size(); ++k) prod[k] *= spec[k];
    }
  }
  std::vector<double> conv = fft::real_inverse(prod, m);
  conv.resize(5 * n_len + 1);
  return conv;
}

namespace {

std::vector<WeightedSequence> build_query_arrays(const RepresentationQuery& q,
                                                const PrimeTable& primes) {
  std::vector<WeightedSequence> fs;
  fs.reserve(5);
  for (int i = 0; i < 5; ++i)
    fs.push_back(build_f(q.ctx, q.offsets[i], q.gammas[i], primes));
  return fs;
}

}  // namespace

double convolve_count(const RepresentationQuery& q, const PrimeTable& primes) {
  u64 target = q.scaled_target();
  auto fs = build_query_arrays(q, primes);
  std::array<const WeightedSequence*, 5> ptrs{&fs[0], &fs[1], &fs[2], &fs[3], &fs[4]};
  return convolve_five(ptrs)[target];
}

u64 brute_count(u64 n, const std::array<GammaParam, 5>& gammas,
                const PrimeTable& primes, u64 threshold, unsigned threads) {
  if (n < 1) throw std::invalid_argument("brute_count: n must be >= 1");
  if (n > threshold)
    throw std::invalid_argument(
        "brute_count: n above enumeration threshold, use the convolution");
  u64 pmax = isqrt_u64(n);
  if (primes.limit() < pmax)
    throw std::invalid_argument("brute_count: sieve limit below sqrt(n)");
  std::array<std::vector<u64>, 5> squares;
  for (int i = 0; i < 5; ++i) {
    primes.for_each_prime(2, pmax, [&](u64 p) {
      if (ps_member(p, gammas[i])) squares[i].push_back(p * p);
    });
  }
  if (squares[0].empty()) return 0;

  auto count_from = [&](u64 first_idx) -> u64 {
    u64 s1 = squares[0][first_idx];
    if (s1 > n) return 0;
    u64 total = 0;
    u64 r1 = n - s1;
    for (u64 s2 : squares[1]) {
      if (s2 > r1) break;
      u64 r2 = r1 - s2;
      for (u64 s3 : squares[2]) {
        if (s3 > r2) break;
        u64 r3 = r2 - s3;
        for (u64 s4 : squares[3]) {
          if (s4 > r3) break;
          u64 r4 = r3 - s4;
          if (std::binary_search(squares[4].begin(), squares[4].end(), r4))
            ++total;
        }
      }
    }
    return total;
  };

  std::vector<u64> partial(squares[0].size(), 0);
  parallel_for(0, squares[0].size(), threads, [&](u64 lo, u64 hi) {
    for (u64 i = lo; i < hi; ++i) partial[i] = count_from(i);
  });
  u64 total = 0;
  for (u64 v : partial) total += v;
  return total;
}

std::optional<Witness> witness_search(const RepresentationQuery& q,
                                      const std::array<const WeightedSequence*, 5>& fs) {
  u64 target = q.scaled_target();
  std::array<std::vector<u64>, 5> support;
  for (int i = 0; i < 5; ++i) {
    const auto& v = fs[i]->values;
    for (u64 n = 1; n < v.size(); ++n) {
      if (v[n] > 0.0) support[i].push_back(n);
    }
    if (support[i].empty()) return std::nullopt;
  }

  // Pair-sum tables; emplace keeps the lexicographically first pair since
  // the fill order is ascending in both coordinates.
  std::unordered_map<u64, std::pair<u64, u64>> sums12;
  for (u64 a : support[0])
    for (u64 b : support[1]) sums12.emplace(a + b, std::make_pair(a, b));
  std::map<u64, std::pair<u64, u64>> sums34;
  for (u64 a : support[2])
    for (u64 b : support[3]) sums34.emplace(a + b, std::make_pair(a, b));

  for (u64 n5 : support[4]) {
    if (n5 + 4 > target) break;
    u64 rem = target - n5;
    for (const auto& [s34, pair34] : sums34) {
      if (s34 + 2 > rem) break;
      auto it = sums12.find(rem - s34);
      if (it == sums12.end()) continue;
      std::array<u64, 5> idx{it->second.first, it->second.second, pair34.first,
                             pair34.second, n5};
      Witness w;
      for (int i = 0; i < 5; ++i) {
        auto root = square_root_of_shifted(idx[i], q.ctx, q.offsets[i]);
        if (!root)
          throw internal_error("witness_search: support index is not a shifted square");
        w.p[i] = *root;
      }
      return w;
    }
  }
  return std::nullopt;
}

std::optional<Witness> witness_search(const RepresentationQuery& q,
                                      const PrimeTable& primes) {
  auto fs = build_query_arrays(q, primes);
  std::array<const WeightedSequence*, 5> ptrs{&fs[0], &fs[1], &fs[2], &fs[3], &fs[4]};
  return witness_search(q, ptrs);
}

bool verify_witness(const RepresentationQuery& q, const Witness& w) {
  u128 sum = 0;
  for (int i = 0; i < 5; ++i) {
    u64 p = w.p[i];
    if (p < 2) return false;
    if (!is_prime_trial(p)) return false;
    if (!ps_member_exact(p, q.gammas[i])) return false;
    if (static_cast<u128>(p) * p % q.ctx.W != q.offsets[i] % q.ctx.W) return false;
    sum += static_cast<u128>(p) * p;
  }
  return sum == static_cast<u128>(q.n0);
}

ScanReport exception_scan(u64 lo, u64 hi, const std::array<GammaParam, 5>& gammas,
                          u64 w, const PrimeTable& primes) {
  if (lo < 1) lo = 1;
  if (lo > hi) throw std::invalid_argument("exception_scan: lo must be <= hi");
  u64 pmax = isqrt_u64(hi);
  if (primes.limit() < pmax)
    throw std::invalid_argument("exception_scan: sieve limit below sqrt(hi)");
  u64 m = std::bit_ceil(5 * hi + 5);
  if (m > (u64{1} << 26))
    throw std::runtime_error("exception_scan: grid exceeds supported size");

  // One indicator array per distinct exponent, multiplied into the product
  // spectrum with its multiplicity.
  std::vector<GammaParam> distinct;
  std::array<std::size_t, 5> slot{};
  for (int i = 0; i < 5; ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), gammas[i]);
    if (it == distinct.end()) {
      slot[i] = distinct.size();
      distinct.push_back(gammas[i]);
    } else {
      slot[i] = static_cast<std::size_t>(it - distinct.begin());
    }
  }
  std::vector<unsigned> multiplicity(distinct.size(), 0);
  for (int i = 0; i < 5; ++i) ++multiplicity[slot[i]];

  std::vector<std::complex<double>> prod;
  for (std::size_t d = 0; d < distinct.size(); ++d) {
    std::vector<double> indicator(m, 0.0);
    primes.for_each_prime(2, pmax, [&](u64 p) {
      if (p * p <= hi && ps_member(p, distinct[d]))
        indicator[p * p] = 1.0;
    });
    auto spec = fft::real_forward(indicator);
    if (prod.empty()) prod.assign(spec.size(), {1.0, 0.0});
    for (u64 k = 0; k < prod.size(); ++k) {
      std::complex<double> power{1.0, 0.0};
      for (unsigned e = 0; e < multiplicity[d]; ++e) power *= spec[k];
      prod[k] *= power;
    }
  }
  std::vector<double> conv = fft::real_inverse(prod, m);

  ScanReport report;
  report.lo = lo;
  report.hi = hi;
  report.w = w;
  report.gammas = gammas;
  u64 first = lo + (5 + 24 - lo % 24) % 24;
  for (u64 n = first; n <= hi; n += 24) {
    ++report.checked;
    if (conv[n] <= 0.5) report.exceptions.push_back(n);
  }

  for (u64 base = u64{1} << (63 - std::countl_zero(lo)); base <= hi; base <<= 1) {
    ScanBlock block;
    block.lo = std::max(lo, base);
    block.hi = std::min(hi, 2 * base - 1);
    if (block.lo > block.hi) continue;
    u64 f = block.lo + (5 + 24 - block.lo % 24) % 24;
    for (u64 n = f; n <= block.hi; n += 24) {
      ++block.checked;
      if (conv[n] <= 0.5) ++block.missing;
    }
    report.blocks.push_back(block);
  }
  return report;
}

}  // namespace pswg
