#include "pswg/spectral.hpp"

#include <cmath>

#include "pswg/fft.hpp"
#include "pswg/ps_set.hpp"

namespace pswg {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Spectrum transform(const WeightedSequence& f, u64 m) {
  u64 n_len = f.length();
  if (m <= n_len)
    throw std::invalid_argument("transform: grid must exceed sequence length");
  Spectrum s;
  s.source_length = n_len;
  s.grid_size = m;
  s.samples = fft::dft_positive(f.values, m);
  return s;
}

std::complex<double> interval_transform(double alpha, u64 n_len) {
  double n = static_cast<double>(n_len);
  double sa = std::sin(M_PI * alpha);
  if (std::abs(sa) < 1e-15) return {n, 0.0};
  double ratio = std::sin(M_PI * n * alpha) / sa;
  double phase = M_PI * (n + 1.0) * alpha;
  return std::polar(ratio, phase);
}

SupDeviation sup_deviation(const WeightedSequence& f, u64 m) {
  u64 n_len = f.length();
  if (m < 8 * n_len)
    throw std::invalid_argument("sup_deviation: grid must be >= 8N");
  Spectrum spec = transform(f, m);
  SupDeviation out;
  out.grid_size = m;
  for (u64 k = 0; k < m; ++k) {
    double alpha = static_cast<double>(k) / static_cast<double>(m);
    double d = std::abs(spec.samples[k] - interval_transform(alpha, n_len));
    if (d > out.value) out.value = d;
  }
  return out;
}

double lq_norm(const Spectrum& spec, double q) {
  if (!(q > 1.0)) throw std::invalid_argument("lq_norm: q must be > 1");
  if (spec.grid_size < 2 * spec.source_length + 1)
    throw std::invalid_argument("lq_norm: grid must be >= 2N + 1");
  long double acc = 0.0L;
  for (const auto& z : spec.samples) {
    acc += std::pow(static_cast<long double>(std::norm(z)),
                    static_cast<long double>(0.5 * q));
  }
  long double mean = acc / static_cast<long double>(spec.grid_size);
  return static_cast<double>(std::pow(mean, 1.0L / static_cast<long double>(q)));
}

namespace {

double moment_estimate(const WeightedSequence& f, double q, u64 m) {
  Spectrum spec = transform(f, m);
  long double acc = 0.0L;
  for (const auto& z : spec.samples) {
    acc += std::pow(static_cast<long double>(std::norm(z)),
                    static_cast<long double>(0.5 * q));
  }
  long double mean = acc / static_cast<long double>(m);
  long double scale = std::pow(static_cast<long double>(f.length()),
                               static_cast<long double>(q - 1.0));
  return static_cast<double>(mean / scale);
}

}  // namespace

RestrictionRatio restriction_ratio(const WeightedSequence& f, double q,
                                   bool allow_q_outside) {
  bool in_range = q > 4.0 && q < 5.0;
  if (!in_range && !allow_q_outside)
    throw std::invalid_argument("restriction_ratio: q outside (4, 5)");
  if (!(q > 1.0)) throw std::invalid_argument("restriction_ratio: q must be > 1");
  RestrictionRatio out;
  out.q = q;
  out.q_in_range = in_range;
  u64 m = 2 * f.length() + 1;
  double prev = moment_estimate(f, q, m);
  for (int iter = 0; iter < 6; ++iter) {
    m *= 2;
    double cur = moment_estimate(f, q, m);
    out.value = cur;
    out.grid_size = m;
    if (std::abs(cur - prev) <= 1e-3 * std::max(std::abs(cur), 1e-300)) {
      out.converged = true;
      return out;
    }
    prev = cur;
  }
  return out;
}

TransferProbe transfer_probe(double theta, u64 x, const GammaParam& gamma,
                             const PrimeTable& primes, bool allow_gamma_outside) {
  if (!std::isfinite(theta))
    throw std::invalid_argument("transfer_probe: theta must be finite");
  if (x < 2) throw std::invalid_argument("transfer_probe: x must be >= 2");
  if (primes.limit() < x)
    throw std::invalid_argument("transfer_probe: sieve limit below x");
  bool in_range = 82 * gamma.num > 75 * gamma.den && gamma.num < gamma.den;
  if (!in_range && !allow_gamma_outside)
    throw std::invalid_argument("transfer_probe: gamma outside (75/82, 1)");

  double inv_gamma = 1.0 / gamma.value();
  double expo = 2.0 - gamma.value();
  std::complex<long double> restricted{0.0L, 0.0L};
  std::complex<long double> classical{0.0L, 0.0L};
  long double ltheta = static_cast<long double>(theta);
  primes.for_each_prime(2, x, [&](u64 p) {
    // Phase reduction in extended precision: theta * p^2 grows to ~1e14
    // and double-only reduction would lose ~1e-2 radians of phase.
    long double pd = static_cast<long double>(p);
    long double frac = std::fmod(ltheta * pd * pd, 1.0L);
    long double ang = static_cast<long double>(kTwoPi) * frac;
    std::complex<long double> e{std::cos(ang), std::sin(ang)};
    double logp = std::log(static_cast<double>(p));
    classical += e * static_cast<long double>(static_cast<double>(p) * logp);
    if (ps_member(p, gamma)) {
      double wgt = inv_gamma * std::pow(static_cast<double>(p), expo) * logp;
      restricted += e * static_cast<long double>(wgt);
    }
  });

  TransferProbe out;
  out.theta = theta;
  out.x = x;
  out.restricted = {static_cast<double>(restricted.real()),
                    static_cast<double>(restricted.imag())};
  out.classical = {static_cast<double>(classical.real()),
                   static_cast<double>(classical.imag())};
  double x2 = static_cast<double>(x) * static_cast<double>(x);
  out.normalized_gap = std::abs(out.restricted - out.classical) / x2;
  return out;
}

}  // namespace pswg
