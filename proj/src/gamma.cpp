#include "pswg/gamma.hpp"

#include <charconv>
#include <numeric>

namespace pswg {

GammaParam::GammaParam(u64 n, u64 d) {
  if (d == 0) throw std::invalid_argument("gamma: zero denominator");
  if (n == 0) throw std::invalid_argument("gamma: zero numerator");
  u64 g = std::gcd(n, d);
  num = n / g;
  den = d / g;
  if (num > den) throw std::invalid_argument("gamma: must satisfy gamma <= 1");
  if (2 * num <= den)
    throw std::invalid_argument("gamma: must satisfy gamma > 1/2");
}

static u64 parse_u64(std::string_view s) {
  u64 v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("gamma: malformed integer '" + std::string(s) + "'");
  return v;
}

GammaParam GammaParam::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return GammaParam(parse_u64(s), 1);
  return GammaParam(parse_u64(s.substr(0, slash)), parse_u64(s.substr(slash + 1)));
}

std::string GammaParam::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace pswg
