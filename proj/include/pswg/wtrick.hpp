#pragma once

#include <array>
#include <map>
#include <vector>

#include "pswg/arith.hpp"

namespace pswg {

// Parameters of the squarefree-modulus rescaling: W = 8 * prod of odd
// primes <= w, and N = floor(n0 / W) + 1 for the problem size n0.
struct WTrickContext {
  u64 w = 0;
  u64 W = 0;
  u64 n0 = 0;
  u64 N = 0;
  u64 phi_W = 0;
};

// Requires w >= 2 and n0 > W.
WTrickContext build_context(u64 w, u64 n0);

// Residues b mod m that are squares of units, with their root counts
// sigma(b) = #{ z mod m : gcd(z, m) = 1, z^2 == b }.
struct ResidueData {
  u64 modulus = 0;
  std::vector<u64> zset;        // increasing
  std::map<u64, u64> sigma;     // keyed by the elements of zset

  bool contains(u64 b) const { return sigma.count(b % modulus) != 0; }
  u64 sigma_of(u64 b) const;    // throws std::invalid_argument if absent
};

// Direct enumeration of z^2 mod m over all units z.
ResidueData residue_data_brute(u64 m);

// Factor m into prime powers, enumerate each factor directly, and compose
// by the Chinese remainder theorem (root counts multiply).
ResidueData residue_data_crt(u64 m);

// Brute force below the crossover modulus, CRT composition above.
ResidueData residue_data(u64 m, u64 brute_threshold = 1'000'000);

// Arithmetic progression P = { offset + step * t : 1 <= t <= length }.
// offset may be negative as long as every element is positive.
struct ProgressionSpec {
  i64 offset = 0;
  u64 step = 1;
  u64 length = 0;

  // Validates length >= 1, step >= 1, and min/max element within [1, n_max].
  void validate(u64 n_max) const;
  i64 element(u64 t) const { return offset + static_cast<i64>(step * t); }
};

// Root-count invariance under progression rescaling: for q = step <= w and
// residue b of the unit-square set mod W, the count of square roots of b
// mod W equals the count of square roots of (W * offset + b) mod (W * q).
bool sigma_invariance_check(const WTrickContext& ctx, u64 b,
                            const ProgressionSpec& prog);

// Exactness of W*q / phi(W*q) == W / phi(W); requires every prime factor
// of q to divide W.
bool totient_ratio_check(u64 W, u64 q);

// Five residues b_i mod W, each a unit square mod W, with sum congruent to
// n mod W.  Requires n == 5 (mod 24).  Found by the smallest-witness scan:
// per odd prime p | W the nonzero quadratic residues are listed increasing
// and the first lexicographic quadruple whose completion lands back in the
// residue list wins; the per-prime digits are then glued by CRT.
std::array<u64, 5> local_decompose(u64 n, const WTrickContext& ctx);

struct LocalSolveReport {
  u64 modulus = 0;
  u64 classes_checked = 0;
  std::vector<u64> failures;  // residue classes with no decomposition
};

// Runs local_decompose over every residue class mod W compatible with
// n == 5 (mod 24) and re-verifies each answer.
LocalSolveReport verify_local_all(const WTrickContext& ctx, unsigned threads = 0);

}  // namespace pswg
