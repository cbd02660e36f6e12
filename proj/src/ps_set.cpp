#include "pswg/ps_set.hpp"

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <numeric>

namespace pswg {

bool ps_member_exact(u64 n, const GammaParam& gamma) {
  if (n == 0) throw std::invalid_argument("ps_member: n must be >= 1");
  if (gamma.is_one()) return true;
  // n is in the image iff some integer m lies in [n^gamma, (n+1)^gamma).
  // With gamma = a/b the least candidate is m0 = ceil((n^a)^{1/b}) and the
  // test m0 < (n+1)^{a/b} becomes m0^b < (n+1)^a, all exact.
  mpz_class na, na1, m0, m0b;
  mpz_ui_pow_ui(na.get_mpz_t(), n, gamma.num);
  mpz_ui_pow_ui(na1.get_mpz_t(), n + 1, gamma.num);
  int exact = mpz_root(m0.get_mpz_t(), na.get_mpz_t(), gamma.den);
  if (exact == 0) m0 += 1;
  mpz_pow_ui(m0b.get_mpz_t(), m0.get_mpz_t(), gamma.den);
  return m0b < na1;
}

std::optional<bool> ps_member_filtered(u64 n, const GammaParam& gamma) {
  if (n == 0) throw std::invalid_argument("ps_member: n must be >= 1");
  if (gamma.is_one()) return true;
  const double gv = gamma.value();
  const double lo = std::pow(static_cast<double>(n), gv);
  const double hi = std::pow(static_cast<double>(n) + 1.0, gv);
  // Rounding radius: the dominant error of pow is (ln n)/2 ulps from the
  // rounded exponent plus a few ulps of its own; 16 + ln(n+1) covers both
  // with a factor >= 2 to spare.
  const double eps = std::numeric_limits<double>::epsilon();
  const double rad = (16.0 + std::log(static_cast<double>(n) + 1.0)) * eps;
  const double el = rad * lo, eh = rad * hi;
  if (std::ceil(lo + el) < hi - eh) return true;
  if (std::ceil(lo - el) >= hi + eh) return false;
  return std::nullopt;
}

bool ps_member(u64 n, const GammaParam& gamma) {
  if (auto v = ps_member_filtered(n, gamma)) return *v;
  return ps_member_exact(n, gamma);
}

std::vector<u64> ps_enumerate(u64 x, const GammaParam& gamma) {
  if (x < 1) throw std::invalid_argument("ps_enumerate: x must be >= 1");
  std::vector<u64> out;
  if (gamma.is_one()) {
    out.reserve(x);
    for (u64 n = 1; n <= x; ++n) out.push_back(n);
    return out;
  }
  for (u64 n = 1; n <= x; ++n) {
    if (ps_member(n, gamma)) out.push_back(n);
  }
  return out;
}

PsPrimeCount pi_gamma(u64 x, const GammaParam& gamma, const PrimeTable& primes) {
  if (x < 1) throw std::invalid_argument("pi_gamma: x must be >= 1");
  PsPrimeCount r;
  r.x = x;
  primes.for_each_prime(2, x, [&](u64 p) {
    if (ps_member(p, gamma)) ++r.count;
  });
  if (x > 1) {
    double xv = static_cast<double>(x);
    r.predicted = std::pow(xv, gamma.value()) / (gamma.value() * std::log(xv));
    r.predicted_valid = true;
  }
  return r;
}

namespace {

double integrand(double t) { return 1.0 / std::log(t); }

double simpson(double a, double b) {
  double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (integrand(a) + 4.0 * integrand(m) + integrand(b));
}

double adaptive(double a, double b, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double left = simpson(a, m);
  double right = simpson(m, b);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(a, m, left, 0.5 * tol, depth - 1) +
         adaptive(m, b, right, 0.5 * tol, depth - 1);
}

double quad(double a, double b) {
  double whole = simpson(a, b);
  double tol = 1e-10 * std::max(1.0, std::abs(whole));
  return adaptive(a, b, whole, tol, 48);
}

}  // namespace

double log_integral(double x) {
  if (!(x >= 2.0)) throw std::invalid_argument("log_integral: x must be >= 2");
  if (x == 2.0) return 0.0;
  // The integrand bends sharply near t = 2; integrating [2, 10] separately
  // keeps the adaptive subdivision shallow on the long tail.
  if (x <= 10.0) return quad(2.0, x);
  return quad(2.0, 10.0) + quad(10.0, x);
}

ProgressionPrimeCount pi_progression(u64 x, u64 q, u64 l, const PrimeTable& primes) {
  if (x < 1) throw std::invalid_argument("pi_progression: x must be >= 1");
  if (q < 1) throw std::invalid_argument("pi_progression: q must be >= 1");
  l %= q;
  if (std::gcd(l, q) != 1)
    throw std::invalid_argument("pi_progression: residue not coprime to modulus");
  ProgressionPrimeCount r;
  primes.for_each_prime(2, x, [&](u64 p) {
    if (p % q == l) ++r.count;
  });
  if (x >= 2) {
    r.li_over_phi = log_integral(static_cast<double>(x)) /
                    static_cast<double>(euler_phi(q));
  }
  return r;
}

}  // namespace pswg
