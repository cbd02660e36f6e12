#include "pswg/weights.hpp"

#include <cmath>
#include <limits>

#include "pswg/ps_set.hpp"

namespace pswg {

const char* weight_kind_name(WeightKind k) {
  switch (k) {
    case WeightKind::ps_weight: return "ps_weight";
    case WeightKind::classical_weight: return "classical_weight";
    case WeightKind::majorant: return "majorant";
    case WeightKind::indicator: return "indicator";
  }
  return "unknown";
}

namespace {

u64 checked_sigma(const WTrickContext& ctx, u64 b) {
  ResidueData zw = residue_data(ctx.W);
  if (b >= ctx.W || !zw.contains(b))
    throw std::invalid_argument("weights: b must be a unit square mod W");
  return zw.sigma_of(b);
}

u64 shifted_top(const WTrickContext& ctx, u64 b) {
  u128 top = static_cast<u128>(ctx.W) * ctx.N + b;
  if (top > u128{std::numeric_limits<u64>::max()})
    throw std::invalid_argument("weights: W*N + b overflows");
  return static_cast<u64>(top);
}

WeightedSequence make_seq(WeightKind kind, const WTrickContext& ctx, u64 b) {
  WeightedSequence s;
  s.kind = kind;
  s.ctx = ctx;
  s.b = b;
  s.values.assign(ctx.N + 1, 0.0);
  return s;
}

}  // namespace

WeightedSequence build_f(const WTrickContext& ctx, u64 b, const GammaParam& gamma,
                         const PrimeTable& primes) {
  u64 sigma = checked_sigma(ctx, b);
  u64 top = shifted_top(ctx, b);
  u64 pmax = isqrt_u64(top);
  if (primes.limit() < pmax)
    throw std::invalid_argument("build_f: sieve limit below sqrt(W*N + b)");
  WeightedSequence s = make_seq(WeightKind::ps_weight, ctx, b);
  s.gamma = gamma;
  double pref = 2.0 * static_cast<double>(ctx.phi_W) /
                (static_cast<double>(ctx.W) * static_cast<double>(sigma)) /
                gamma.value();
  double expo = 2.0 - gamma.value();
  primes.for_each_prime(2, pmax, [&](u64 p) {
    u64 sq = p * p;
    if (sq <= b || (sq - b) % ctx.W != 0) return;
    u64 n = (sq - b) / ctx.W;
    if (n < 1 || n > ctx.N) return;
    if (!ps_member(p, gamma)) return;
    double pd = static_cast<double>(p);
    s.values[n] = pref * std::pow(pd, expo) * std::log(pd);
  });
  return s;
}

WeightedSequence build_lambda(const WTrickContext& ctx, u64 b,
                              const PrimeTable& primes) {
  u64 sigma = checked_sigma(ctx, b);
  u64 top = shifted_top(ctx, b);
  u64 pmax = isqrt_u64(top);
  if (primes.limit() < pmax)
    throw std::invalid_argument("build_lambda: sieve limit below sqrt(W*N + b)");
  WeightedSequence s = make_seq(WeightKind::classical_weight, ctx, b);
  double pref = 2.0 * static_cast<double>(ctx.phi_W) /
                (static_cast<double>(ctx.W) * static_cast<double>(sigma));
  primes.for_each_prime(2, pmax, [&](u64 p) {
    u64 sq = p * p;
    if (sq <= b || (sq - b) % ctx.W != 0) return;
    u64 n = (sq - b) / ctx.W;
    if (n < 1 || n > ctx.N) return;
    double pd = static_cast<double>(p);
    s.values[n] = pref * pd * std::log(pd);
  });
  return s;
}

WeightedSequence build_majorant(const WTrickContext& ctx, u64 b,
                                const GammaParam& gamma) {
  u64 sigma = checked_sigma(ctx, b);
  u64 top = shifted_top(ctx, b);
  u64 tmax = isqrt_u64(top);
  WeightedSequence s = make_seq(WeightKind::majorant, ctx, b);
  s.gamma = gamma;
  double pref = 2.0 / static_cast<double>(sigma) / gamma.value();
  double expo = 2.0 - gamma.value();
  for (u64 t = 1; t <= tmax; ++t) {
    u64 sq = t * t;
    if (sq <= b || (sq - b) % ctx.W != 0) continue;
    u64 n = (sq - b) / ctx.W;
    if (n < 1 || n > ctx.N) continue;
    if (!ps_member(t, gamma)) continue;
    s.values[n] = pref * std::pow(static_cast<double>(t), expo);
  }
  return s;
}

WeightedSequence build_indicator(const WTrickContext& ctx) {
  WeightedSequence s = make_seq(WeightKind::indicator, ctx, 0);
  for (u64 n = 1; n <= ctx.N; ++n) s.values[n] = 1.0;
  return s;
}

double mean_over_progression(const WeightedSequence& f, const ProgressionSpec& prog) {
  prog.validate(f.length());
  double sum = 0.0;
  for (u64 t = 1; t <= prog.length; ++t) {
    sum += f.values[static_cast<u64>(prog.element(t))];
  }
  return sum / static_cast<double>(prog.length);
}

std::optional<u64> square_root_of_shifted(u64 n, const WTrickContext& ctx, u64 b) {
  if (n < 1 || n > ctx.N)
    throw std::invalid_argument("square_root_of_shifted: n outside [1, N]");
  u128 top = static_cast<u128>(ctx.W) * n + b;
  if (top > u128{std::numeric_limits<u64>::max()})
    throw std::invalid_argument("square_root_of_shifted: W*n + b overflows");
  return exact_sqrt(static_cast<u64>(top));
}

}  // namespace pswg
