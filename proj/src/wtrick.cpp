#include "pswg/wtrick.hpp"

#include <algorithm>
#include <numeric>

#include "pswg/parallel.hpp"

namespace pswg {

WTrickContext build_context(u64 w, u64 n0) {
  if (w < 2) throw std::invalid_argument("build_context: w must be >= 2");
  u128 W = 8;
  for (u64 p = 3; p <= w; p += 2) {
    if (!is_prime_trial(p)) continue;
    W *= p;
    if (W > (u128{1} << 62))
      throw std::invalid_argument("build_context: w too large, modulus overflows");
  }
  WTrickContext ctx;
  ctx.w = w;
  ctx.W = static_cast<u64>(W);
  if (n0 <= ctx.W)
    throw std::invalid_argument("build_context: n0 must exceed the modulus");
  ctx.n0 = n0;
  ctx.N = n0 / ctx.W + 1;
  ctx.phi_W = euler_phi(ctx.W);
  return ctx;
}

u64 ResidueData::sigma_of(u64 b) const {
  auto it = sigma.find(b % modulus);
  if (it == sigma.end())
    throw std::invalid_argument("ResidueData: residue " + std::to_string(b) +
                                " is not a unit square mod " +
                                std::to_string(modulus));
  return it->second;
}

ResidueData residue_data_brute(u64 m) {
  if (m < 1) throw std::invalid_argument("residue_data: modulus must be >= 1");
  ResidueData r;
  r.modulus = m;
  for (u64 z = 0; z < m; ++z) {
    if (std::gcd(z, m) != 1 && m != 1) continue;
    u64 b = static_cast<u64>(static_cast<u128>(z) * z % m);
    ++r.sigma[b];
  }
  if (m == 1) r.sigma[0] = 1;
  r.zset.reserve(r.sigma.size());
  for (auto& [b, cnt] : r.sigma) r.zset.push_back(b);
  return r;
}

namespace {

ResidueData compose_crt(const ResidueData& a, const ResidueData& b) {
  ResidueData r;
  u128 m = static_cast<u128>(a.modulus) * b.modulus;
  if (m > (u128{1} << 62))
    throw std::invalid_argument("residue_data: modulus overflows");
  r.modulus = static_cast<u64>(m);
  for (u64 ra : a.zset) {
    for (u64 rb : b.zset) {
      u64 x = crt_pair(ra, a.modulus, rb, b.modulus);
      r.sigma[x] = a.sigma.at(ra) * b.sigma.at(rb);
    }
  }
  r.zset.reserve(r.sigma.size());
  for (auto& [x, cnt] : r.sigma) r.zset.push_back(x);
  return r;
}

}  // namespace

ResidueData residue_data_crt(u64 m) {
  if (m < 1) throw std::invalid_argument("residue_data: modulus must be >= 1");
  ResidueData r = residue_data_brute(1);
  for (auto [p, e] : factorize(m)) {
    u64 pe = 1;
    for (unsigned i = 0; i < e; ++i) pe *= p;
    r = compose_crt(r, residue_data_brute(pe));
  }
  return r;
}

ResidueData residue_data(u64 m, u64 brute_threshold) {
  if (m <= brute_threshold) return residue_data_brute(m);
  return residue_data_crt(m);
}

void ProgressionSpec::validate(u64 n_max) const {
  if (length < 1)
    throw std::invalid_argument("ProgressionSpec: empty progression");
  if (step < 1) throw std::invalid_argument("ProgressionSpec: step must be >= 1");
  __int128 first = static_cast<__int128>(offset) + static_cast<__int128>(step);
  __int128 last = static_cast<__int128>(offset) +
                  static_cast<__int128>(step) * static_cast<__int128>(length);
  if (first < 1 || last > static_cast<__int128>(n_max))
    throw std::invalid_argument("ProgressionSpec: elements leave [1, N]");
}

bool sigma_invariance_check(const WTrickContext& ctx, u64 b,
                            const ProgressionSpec& prog) {
  prog.validate(ctx.N);
  if (prog.step > ctx.w)
    throw std::invalid_argument("sigma_invariance_check: step must be <= w");
  ResidueData base = residue_data(ctx.W);
  if (!base.contains(b))
    throw std::invalid_argument("sigma_invariance_check: b not a unit square mod W");
  u128 Wq = static_cast<u128>(ctx.W) * prog.step;
  if (Wq > (u128{1} << 62))
    throw std::invalid_argument("sigma_invariance_check: rescaled modulus overflows");
  u64 W2 = static_cast<u64>(Wq);
  __int128 shifted = static_cast<__int128>(ctx.W) * prog.offset +
                     static_cast<__int128>(b % ctx.W);
  __int128 red = shifted % static_cast<__int128>(W2);
  if (red < 0) red += W2;
  u64 b2 = static_cast<u64>(red);
  ResidueData fine = residue_data(W2);
  if (!fine.contains(b2)) return false;
  return base.sigma_of(b) == fine.sigma_of(b2);
}

bool totient_ratio_check(u64 W, u64 q) {
  if (W < 1 || q < 1)
    throw std::invalid_argument("totient_ratio_check: arguments must be >= 1");
  for (auto [p, e] : factorize(q)) {
    (void)e;
    if (W % p != 0)
      throw std::invalid_argument(
          "totient_ratio_check: q has a prime factor not dividing W");
  }
  u128 Wq = static_cast<u128>(W) * q;
  if (Wq > (u128{1} << 62))
    throw std::invalid_argument("totient_ratio_check: modulus overflows");
  // W*q / phi(W*q) == W / phi(W)  <=>  q * phi(W) == phi(W*q).
  return static_cast<u128>(q) * euler_phi(W) == euler_phi(static_cast<u64>(Wq));
}

namespace {

std::vector<u64> nonzero_quadratic_residues(u64 p) {
  std::vector<bool> seen(p, false);
  for (u64 z = 1; z < p; ++z) seen[z * z % p] = true;
  seen[0] = false;
  std::vector<u64> out;
  for (u64 r = 1; r < p; ++r) {
    if (seen[r]) out.push_back(r);
  }
  return out;
}

// First quadruple (x1, x2, x3, x4) in lexicographic order over the residue
// list whose completion x5 = target - x1 - x2 - x3 - x4 lies in the list.
bool find_quintuple(const std::vector<u64>& qr, u64 p, u64 target,
                    std::array<u64, 5>& out) {
  for (u64 x1 : qr)
    for (u64 x2 : qr)
      for (u64 x3 : qr)
        for (u64 x4 : qr) {
          u64 x5 = (target + 4 * p * p - x1 - x2 - x3 - x4) % p;
          if (std::binary_search(qr.begin(), qr.end(), x5)) {
            out = {x1, x2, x3, x4, x5};
            return true;
          }
        }
  return false;
}

}  // namespace

std::array<u64, 5> local_decompose(u64 n, const WTrickContext& ctx) {
  if (n % 24 != 5)
    throw std::invalid_argument("local_decompose: n must be 5 mod 24");
  std::array<u64, 5> b{1, 1, 1, 1, 1};  // the unique unit square mod 8
  u64 modulus = 8;
  for (u64 p = 3; p <= ctx.w; p += 2) {
    if (!is_prime_trial(p)) continue;
    auto qr = nonzero_quadratic_residues(p);
    std::array<u64, 5> digits;
    if (!find_quintuple(qr, p, n % p, digits))
      throw internal_error("local_decompose: no residue quintuple mod " +
                           std::to_string(p));
    for (int i = 0; i < 5; ++i)
      b[i] = crt_pair(b[i], modulus, digits[i], p);
    modulus *= p;
  }
  u64 sum = 0;
  for (u64 v : b) sum += v;
  if (sum % ctx.W != n % ctx.W)
    throw internal_error("local_decompose: component sum mismatch");
  return b;
}

LocalSolveReport verify_local_all(const WTrickContext& ctx, unsigned threads) {
  LocalSolveReport report;
  report.modulus = ctx.W;
  u64 g = std::gcd(ctx.W, u64{24});
  std::vector<u64> classes;
  for (u64 r = 5 % g; r < ctx.W; r += g) classes.push_back(r);
  report.classes_checked = classes.size();

  ResidueData zw = residue_data(ctx.W);
  std::vector<std::uint8_t> failed(classes.size(), 0);
  parallel_for(0, classes.size(), threads, [&](u64 lo, u64 hi) {
    for (u64 i = lo; i < hi; ++i) {
      u64 r = classes[i];
      // Lift to a representative that is both r mod W and 5 mod 24.
      u64 n = r;
      while (n % 24 != 5) n += ctx.W;
      bool ok = true;
      try {
        auto bs = local_decompose(n, ctx);
        u64 sum = 0;
        for (u64 b : bs) {
          if (!zw.contains(b) || std::gcd(b, ctx.W) != 1) ok = false;
          sum += b;
        }
        if (sum % ctx.W != n % ctx.W) ok = false;
      } catch (const std::exception&) {
        ok = false;
      }
      if (!ok) failed[i] = 1;
    }
  });
  for (u64 i = 0; i < classes.size(); ++i) {
    if (failed[i]) report.failures.push_back(classes[i]);
  }
  return report;
}

}  // namespace pswg
