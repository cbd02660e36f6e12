#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pswg {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Thrown when a mathematical invariant the library guarantees is found
// violated at runtime.  The CLI maps this to exit code 2, as opposed to
// std::invalid_argument (bad input, exit 1) and resource errors (exit 3).
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Prime factorisation by trial division, ascending primes.
std::vector<std::pair<u64, unsigned>> factorize(u64 m);

u64 euler_phi(u64 m);

// Exact floor square root.
u64 isqrt_u64(u64 s);

// The integer t with t*t == s, if s is a perfect square.
std::optional<u64> exact_sqrt(u64 s);

// Deterministic primality by trial division; independent of PrimeTable so
// it can serve as a cross-check.
bool is_prime_trial(u64 n);

// Solution x mod m1*m2 of x == r1 (mod m1), x == r2 (mod m2) for coprime
// moduli.  Throws std::invalid_argument if gcd(m1, m2) != 1.
u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2);

}  // namespace pswg
