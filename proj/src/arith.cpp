#include "pswg/arith.hpp"

#include <cmath>
#include <numeric>

namespace pswg {

std::vector<std::pair<u64, unsigned>> factorize(u64 m) {
  if (m == 0) throw std::invalid_argument("factorize: m must be positive");
  std::vector<std::pair<u64, unsigned>> out;
  auto strip = [&](u64 p) {
    if (m % p != 0) return;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p * p <= m; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

u64 euler_phi(u64 m) {
  u64 phi = 1;
  for (auto [p, e] : factorize(m)) {
    u64 pe = p - 1;
    for (unsigned i = 1; i < e; ++i) pe *= p;
    phi *= pe;
  }
  return phi;
}

u64 isqrt_u64(u64 s) {
  if (s == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(s)));
  while (r > 0 && r > s / r) --r;
  while ((r + 1) <= s / (r + 1)) ++r;
  return r;
}

std::optional<u64> exact_sqrt(u64 s) {
  u64 r = isqrt_u64(s);
  if (r * r == s) return r;
  return std::nullopt;
}

bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 p = 5; p * p <= n; p += 6) {
    if (n % p == 0 || n % (p + 2) == 0) return false;
  }
  return true;
}

namespace {

// Extended gcd on signed 128-bit values: returns g and x with
// a*x == g (mod b).
struct ExtGcd {
  __int128 g, x;
};

ExtGcd ext_gcd(__int128 a, __int128 b) {
  __int128 old_r = a, r = b;
  __int128 old_x = 1, x = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_x - q * x;
    old_x = x;
    x = t;
  }
  return {old_r, old_x};
}

}  // namespace

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
  if (m1 == 0 || m2 == 0) throw std::invalid_argument("crt_pair: zero modulus");
  if (std::gcd(m1, m2) != 1)
    throw std::invalid_argument("crt_pair: moduli must be coprime");
  auto [g, inv] = ext_gcd(static_cast<__int128>(m1), static_cast<__int128>(m2));
  (void)g;
  __int128 m = static_cast<__int128>(m1) * m2;
  __int128 d = static_cast<__int128>(r2 % m2) - static_cast<__int128>(r1 % m1);
  __int128 k = (d * inv) % static_cast<__int128>(m2);
  __int128 x = static_cast<__int128>(r1 % m1) + k * static_cast<__int128>(m1);
  x %= m;
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

}  // namespace pswg
