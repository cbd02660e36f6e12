#pragma once

#include <optional>
#include <vector>

#include "pswg/gamma.hpp"
#include "pswg/primes.hpp"

namespace pswg {

// Membership of n >= 1 in the floor-power image {floor(m^{1/gamma}) : m >= 1},
// decided exactly with big-integer arithmetic: n is a member iff the least
// m-th ... iff ceil(n^a / 1)^(1/b) rounded up, raised back, stays below
// (n+1)^a, for gamma = a/b in lowest terms.
bool ps_member_exact(u64 n, const GammaParam& gamma);

// Floating-point pre-filter.  Returns a certified verdict when the interval
// [n^gamma, (n+1)^gamma), widened resp. shrunk by a conservative rounding
// radius, provably contains resp. excludes an integer; nullopt otherwise.
std::optional<bool> ps_member_filtered(u64 n, const GammaParam& gamma);

// Certified filter verdict when available, exact fallback otherwise.
bool ps_member(u64 n, const GammaParam& gamma);

// All members of the floor-power image in [1, x], increasing.
std::vector<u64> ps_enumerate(u64 x, const GammaParam& gamma);

struct PsPrimeCount {
  u64 x = 0;
  u64 count = 0;          // primes p <= x inside the image
  double predicted = 0;   // x^gamma / (gamma * log x)
  bool predicted_valid = false;  // false when x <= 1
};

// Count of primes inside the floor-power image, with the first-order
// density prediction attached.  Requires primes.limit() >= x.
PsPrimeCount pi_gamma(u64 x, const GammaParam& gamma, const PrimeTable& primes);

// Principal value of the logarithmic integral from 2 to x via adaptive
// quadrature (relative accuracy ~1e-9).  Requires x >= 2.
double log_integral(double x);

struct ProgressionPrimeCount {
  u64 count = 0;
  double li_over_phi = 0;  // li(x) / phi(q)
};

// Count of primes p <= x with p == l (mod q), gcd(l, q) = 1, together with
// the expected main term.  Requires primes.limit() >= x.
ProgressionPrimeCount pi_progression(u64 x, u64 q, u64 l, const PrimeTable& primes);

}  // namespace pswg
