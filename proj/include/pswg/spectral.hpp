#pragma once

#include <complex>
#include <vector>

#include "pswg/primes.hpp"
#include "pswg/weights.hpp"

namespace pswg {

// Samples of the exponential sum fhat(k/M) = sum_n f(n) e(n*k/M) on the
// uniform grid k = 0..M-1, with e(t) = exp(2*pi*i*t).
struct Spectrum {
  u64 source_length = 0;  // N
  u64 grid_size = 0;      // M
  std::vector<std::complex<double>> samples;
};

// Requires M > N (strict zero padding).
Spectrum transform(const WeightedSequence& f, u64 m);

// Closed form of the transform of the indicator of [1, N] at angle alpha.
std::complex<double> interval_transform(double alpha, u64 n_len);

struct SupDeviation {
  double value = 0;    // max_k |fhat(k/M) - indicator_hat(k/M)|
  u64 grid_size = 0;
};

// Requires M >= 8*N so the grid resolves the deviation peaks.
SupDeviation sup_deviation(const WeightedSequence& f, u64 m);

// (mean_k |samples[k]|^q)^{1/q}; requires q > 1 and M >= 2N + 1.
double lq_norm(const Spectrum& spec, double q);

struct RestrictionRatio {
  double value = 0;       // grid estimate of integral |fhat|^q, over N^{q-1}
  double q = 0;
  u64 grid_size = 0;      // finest grid used
  bool converged = false; // doubling changed the estimate by < 1e-3 relative
  bool q_in_range = false;  // 4 < q < 5
};

// Moment ratio with automatic grid doubling from M = 2N+1 until two
// consecutive estimates agree to 1e-3 relative.  q outside (4, 5) requires
// allow_q_outside; the exponent range matters to the supported use, not to
// the quadrature.
RestrictionRatio restriction_ratio(const WeightedSequence& f, double q,
                                   bool allow_q_outside = false);

struct TransferProbe {
  double theta = 0;
  u64 x = 0;
  std::complex<double> restricted;  // (1/gamma) sum p^{2-gamma} log p e(theta p^2)
  std::complex<double> classical;   // sum p log p e(theta p^2)
  double normalized_gap = 0;        // |restricted - classical| / x^2
};

// Compares the image-restricted quadratic exponential sum with its
// classical counterpart over primes p <= x.  gamma outside (75/82, 1)
// requires allow_gamma_outside.  Requires primes.limit() >= x and x >= 2.
TransferProbe transfer_probe(double theta, u64 x, const GammaParam& gamma,
                             const PrimeTable& primes,
                             bool allow_gamma_outside = false);

}  // namespace pswg
