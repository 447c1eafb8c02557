#include "rsz/rational.hpp"

#include <numeric>

namespace rsz {

int valuation(const Integer& x, long p) {
  if (x == 0) return kInfVal;
  Integer q = x;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

int valuation(const Rational& x, long p) {
  if (x == 0) return kInfVal;
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

Rational ppow(long p, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p),
                static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(r);
  return Rational(Integer(1), r);
}

long ipow(long p, int e) {
  if (e < 0) throw DomainError("ipow: negative exponent");
  long r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

Rational unit_part(const Rational& x, long p) {
  if (x == 0) throw DomainError("unit_part of zero");
  Rational r = x / ppow(p, valuation(x, p));
  return r;
}

long residue(const Rational& x, long p, int k) {
  if (k <= 0) return 0;
  if (x != 0 && valuation(x, p) < 0) throw DomainError("residue: not p-integral");
  Rational xc = x;
  xc.canonicalize();
  Integer m = ipow(p, k);
  Integer d = xc.get_den();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("residue: denominator not invertible");
  Integer r = (Integer(xc.get_num()) * inv) % m;
  if (r < 0) r += m;
  return r.get_si();
}

long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mod_inverse(long a, long m) {
  long old_r = mod_pos(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    long t = old_r - q * r; old_r = r; r = t;
    t = old_s - q * s; old_s = s; s = t;
  }
  if (old_r != 1) throw DomainError("mod_inverse: not invertible");
  return mod_pos(old_s, m);
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return std::lcm(a, b); }

Rational reduce_mod_pe(const Rational& x, long p, int e) {
  int v = valuation(x, p);
  if (v >= e) return Rational(0);
  int m = -v > 0 ? -v : 0;
  // x p^m is p-integral; keep it modulo p^{m+e}
  Rational scaled = x * ppow(p, m);
  long r = residue(scaled, p, m + e);
  Rational out(r);
  out /= ppow(p, m);
  out.canonicalize();
  return out;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational parse_rational(const std::string& s) {
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("bad rational: " + s);
  r.canonicalize();
  return r;
}

}  // namespace rsz
