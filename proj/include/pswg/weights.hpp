#pragma once

#include <optional>
#include <vector>

#include "pswg/gamma.hpp"
#include "pswg/primes.hpp"
#include "pswg/wtrick.hpp"

namespace pswg {

enum class WeightKind { ps_weight, classical_weight, majorant, indicator };

const char* weight_kind_name(WeightKind k);

// A nonnegative array over [1, N] tied to a rescaling context and a
// residue b.  values has size N+1 with values[0] unused (zero).
struct WeightedSequence {
  WeightKind kind = WeightKind::indicator;
  WTrickContext ctx;
  u64 b = 0;
  std::optional<GammaParam> gamma;
  std::vector<double> values;

  u64 length() const { return ctx.N; }
};

// Normalised prime-square weight restricted to the floor-power image:
// nonzero at n when W*n + b = p^2 for a prime p in the image, with value
// (2 phi(W) / (W sigma(b))) * (1/gamma) * p^{2-gamma} * log p.
// Requires b a unit square mod W and primes.limit() >= sqrt(W*N + b).
WeightedSequence build_f(const WTrickContext& ctx, u64 b, const GammaParam& gamma,
                         const PrimeTable& primes);

// Same support without the image restriction, weight
// (2 phi(W) / (W sigma(b))) * p * log p.
WeightedSequence build_lambda(const WTrickContext& ctx, u64 b,
                              const PrimeTable& primes);

// Majorant dropping primality: nonzero at n when W*n + b = t^2 for any
// integer t in the image, with value (2 / sigma(b)) * (1/gamma) * t^{2-gamma}.
WeightedSequence build_majorant(const WTrickContext& ctx, u64 b,
                                const GammaParam& gamma);

// The constant sequence 1 on [1, N].
WeightedSequence build_indicator(const WTrickContext& ctx);

// Average of f over the progression elements.
double mean_over_progression(const WeightedSequence& f, const ProgressionSpec& prog);

// The integer t >= 0 with t^2 == W*n + b, if W*n + b is a perfect square.
std::optional<u64> square_root_of_shifted(u64 n, const WTrickContext& ctx, u64 b);

}  // namespace pswg
