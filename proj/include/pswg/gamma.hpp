#pragma once

#include <string>
#include <string_view>

#include "pswg/arith.hpp"

namespace pswg {

// Rational exponent a/b with 1/2 < a/b <= 1, stored in lowest terms.
// The shape exponent of a floor-power sequence {floor(m^{b/a})}.
struct GammaParam {
  u64 num = 1;
  u64 den = 1;

  GammaParam() = default;
  GammaParam(u64 n, u64 d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_one() const { return num == den; }

  // Accepts "a/b" or a bare integer such as "1".
  static GammaParam parse(std::string_view s);
  std::string str() const;

  friend bool operator==(const GammaParam&, const GammaParam&) = default;
  friend bool operator<(const GammaParam& a, const GammaParam& b) {
    return a.num * b.den < b.num * a.den;
  }
};

}  // namespace pswg
