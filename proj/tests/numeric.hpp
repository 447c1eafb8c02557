#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <string>

#include <doctest.h>

#include "rsz/cyclotomic.hpp"

namespace rsz::testing {

using cd = std::complex<double>;

// Independent numeric evaluation: zeta_N^j as exp(2 pi i j / N), Q as sqrt(p),
// symbols as fixed points on the unit circle.
inline cd numeric(const CycScalar& s, const std::map<std::string, cd>& sym = {}) {
  cd out = 0;
  for (const auto& t : s.terms()) {
    cd z = std::polar(1.0, 2 * M_PI * double(t.zeta) / double(s.level()));
    if (t.qdeg) z *= std::sqrt(double(s.prime()));
    for (const auto& [n, e] : t.mono.factors()) z *= std::pow(sym.at(n), e);
    out += z * t.coeff.get_d();
  }
  return out;
}

}  // namespace rsz::testing

namespace rsz {
inline std::ostream& operator<<(std::ostream& os, const CycScalar& s) { return os << s.str(); }
}  // namespace rsz
