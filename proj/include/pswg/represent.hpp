#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pswg/weights.hpp"

namespace pswg {

// A five-squares target: n0 == 5 (mod 24) to be written as a sum of five
// prime squares, with per-slot image exponents and residues b_i from the
// local decomposition.
struct RepresentationQuery {
  u64 n0 = 0;
  WTrickContext ctx;
  std::array<GammaParam, 5> gammas;
  std::array<u64, 5> offsets;  // the residues b_i

  // Checks n0 == 5 (mod 24), each b_i a unit square mod W, and the sum
  // congruence; returns the rescaled target n' = (n0 - sum b_i) / W,
  // which must land in (N/2, N).
  u64 scaled_target() const;
};

struct Witness {
  std::array<u64, 5> p;
};

// Full linear five-fold convolution of the given sequences, computed on a
// power-of-two grid of size >= 5N + 5 so no cyclic wraparound can occur.
// Result has size 5N + 1, entry m = sum over n1+..+n5 = m of the products.
std::vector<double> convolve_five(const std::array<const WeightedSequence*, 5>& fs);

// Weighted representation count at the rescaled target: builds the five
// prime-square weight arrays and reads off the convolution.
double convolve_count(const RepresentationQuery& q, const PrimeTable& primes);

// Exact number of ordered five-tuples (p1..p5) of image primes with
// sum of squares equal to n.  Refuses n > threshold (use the convolution
// for large targets).
u64 brute_count(u64 n, const std::array<GammaParam, 5>& gammas,
                const PrimeTable& primes, u64 threshold = 20'000,
                unsigned threads = 0);

// Meet-in-the-middle search over the supports of the five weight arrays:
// pair sums of slots 1+2 and 3+4 are tabulated, then slot 5 is scanned.
// Deterministic: the first hit in (n5, n34, n12) scan order wins.
std::optional<Witness> witness_search(const RepresentationQuery& q,
                                      const std::array<const WeightedSequence*, 5>& fs);
std::optional<Witness> witness_search(const RepresentationQuery& q,
                                      const PrimeTable& primes);

// Re-derivation of a claimed witness by arithmetic independent of the
// search: exact square sum, trial-division primality, exact image
// membership, and the residue condition p_i^2 == b_i (mod W).
bool verify_witness(const RepresentationQuery& q, const Witness& w);

struct ScanBlock {
  u64 lo = 0;
  u64 hi = 0;       // inclusive
  u64 checked = 0;
  u64 missing = 0;
};

struct ScanReport {
  u64 lo = 0;
  u64 hi = 0;
  u64 w = 0;  // recorded for provenance; the scan itself needs no rescaling
  std::array<GammaParam, 5> gammas;
  u64 checked = 0;
  std::vector<u64> exceptions;
  std::vector<ScanBlock> blocks;  // dyadic ranges
};

// For every n == 5 (mod 24) in [lo, hi], decides by one big indicator
// convolution whether n is a sum of five squares of image primes, and
// reports the exceptions with per-dyadic-block counts.
ScanReport exception_scan(u64 lo, u64 hi, const std::array<GammaParam, 5>& gammas,
                          u64 w, const PrimeTable& primes);

}  // namespace pswg
