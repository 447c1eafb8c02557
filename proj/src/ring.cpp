#include "rsz/ring.hpp"

namespace rsz {

CycScalar swap_symbols(const CycScalar& a, const std::string& x, const std::string& y) {
  std::vector<CycScalar::Term> out;
  for (auto t : a.terms()) {
    int ex = t.mono.exponent(x), ey = t.mono.exponent(y);
    t.mono = t.mono.without(x).without(y) * Monomial::symbol(x, ey) * Monomial::symbol(y, ex);
    out.push_back(std::move(t));
  }
  return CycScalar::from_terms(a.level(), a.prime(), out);
}

Membership membership(const CycScalar& a, const RingSpec& ring) {
  Membership r;
  for (const auto& t : a.terms()) r.uses_sqrt |= t.qdeg != 0;
  std::set<std::string> paired;
  for (const auto& [x, y] : ring.hecke_pairs) paired.insert(x), paired.insert(y);

  for (const auto& s : a.symbol_names()) {
    if (!ring.symbols.count(s) && !paired.count(s)) return {false, "symbol " + s + " not in ring", r.uses_sqrt};
  }
  for (const auto& [x, y] : ring.hecke_pairs) {
    if (!(swap_symbols(a, x, y) == a))
      return {false, "not symmetric in Hecke pair (" + x + ", " + y + ")", r.uses_sqrt};
  }
  if (!ring.allow_sqrt) {
    for (const auto& t : a.terms()) {
      int deg = 0;
      for (const auto& [x, y] : ring.hecke_pairs) deg += t.mono.exponent(x) + t.mono.exponent(y);
      if (((t.qdeg + deg) % 2 + 2) % 2 != 0)
        return {false, "Q-degree parity: sqrt(q) needed", r.uses_sqrt};
    }
  }
  long big = ring.m;
  for (const auto& c : ring.constants) big = lcm_l(big, c.level());
  if (big % a.level() != 0)
    return {false, "coordinate outside Q(mu_" + std::to_string(big) + ")", r.uses_sqrt};
  for (const auto& t : a.terms()) {
    Integer den = t.coeff.get_den();
    while (ring.p > 1 && mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ring.p)))
      mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(ring.p));
    if (den != 1) return {false, "denominator " + den.get_str(), r.uses_sqrt};
  }
  return r;
}

Membership membership(const LaurentPoly& f, const RingSpec& ring) {
  Membership r;
  for (const auto& [n, c] : f.coeffs()) {
    Membership m = membership(c, ring);
    r.uses_sqrt |= m.uses_sqrt;
    if (!m.member) {
      m.certificate = "coefficient of X^" + std::to_string(n) + ": " + m.certificate;
      return m;
    }
  }
  return r;
}

}  // namespace rsz
