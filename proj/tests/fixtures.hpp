#pragma once

#include <random>
#include <vector>

#include "rsz/padic.hpp"
#include "rsz/reps.hpp"

namespace rsz::testing {

inline Rational random_padic(std::mt19937& rng, long p, int vmin, int vmax) {
  std::uniform_int_distribution<long> num(1, 200), vd(vmin, vmax), sg(0, 1);
  Rational x(num(rng) * (sg(rng) ? 1 : -1), 1 + (num(rng) % 5));
  x.canonicalize();
  if (valuation(x, p) != kInfVal) x /= ppow(p, valuation(x, p));
  return x * ppow(p, int(vd(rng)));
}

inline Mat2 random_matrix(std::mt19937& rng, long p, int vmin = -3, int vmax = 3) {
  for (;;) {
    Mat2 g{random_padic(rng, p, vmin, vmax), random_padic(rng, p, vmin, vmax), random_padic(rng, p, vmin, vmax),
           random_padic(rng, p, vmin, vmax)};
    std::uniform_int_distribution<int> z(0, 5);
    if (z(rng) == 0) g.c = 0;
    if (z(rng) == 0) g.b = 0;
    if (g.det() != 0) return g;
  }
}

inline Mat2 random_k(std::mt19937& rng, long p, int c) {
  std::uniform_int_distribution<long> r(0, 80);
  for (;;) {
    Mat2 k{r(rng), r(rng), Rational(r(rng)) * ppow(p, c), 1 + Rational(r(rng)) * ppow(p, c)};
    if (c == 0) k.d = r(rng);
    if (in_k(k, p, c)) return k;
  }
}

// One representative per Whittaker-supported class and conductor at p.
inline std::vector<LocalRep> supported_reps(long p) {
  std::vector<LocalRep> out;
  out.emplace_back(p, UnramifiedPS{CycScalar::zeta(8, 1), CycScalar::zeta(8, 3)});
  out.emplace_back(p, SteinbergUnr{CycScalar(1)});
  out.emplace_back(p, SteinbergUnr{CycScalar::zeta(6, 1)});
  out.emplace_back(p, HalfRamifiedPS{CycScalar::zeta(5, 1), MultChar(p, 1, 1), CycScalar(1)});
  out.emplace_back(p, HalfRamifiedPS{CycScalar::zeta(5, 2), MultChar(p, 2, 1), CycScalar::zeta(7, 1)});
  for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2}) {
    const QuadExt e(p, k);
    for (long x = 1;; ++x) {
      ECharacter xi = ECharacter::normalized(e, x);
      if (!xi.regular()) continue;
      out.emplace_back(p, Supercuspidal{xi, CycScalar(1)});
      break;
    }
  }
  return out;
}

}  // namespace rsz::testing
