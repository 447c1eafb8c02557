#include "rsz/sums.hpp"

#include <algorithm>
#include <stdexcept>

namespace rsz {

CycScalar measure::additive_oe(const QuadExt& E) {
  if (E.e() == 1) return CycScalar(1);
  return CycScalar::sqrt_q(E.p()) * CycScalar(Rational(1, E.p()));
}

std::string sum_mode_name(SumMode m) { return m == SumMode::Closed ? "closed" : "brute"; }

namespace {

// psi(x * y) for integers y is zeta_n^{k y}; n = 1 when x is integral.
struct AddChar {
  long n = 1, k = 0;
  AddChar(const Rational& x, long p) {
    if (x == 0) return;
    int v = valuation(x, p);
    if (v >= 0) return;
    n = ipow(p, -v);
    k = residue(x * ppow(p, -v), p, -v);
  }
};

long unit_modulus(long p, int e) { return ipow(p, std::max(e, 1)); }

// chi normalized to chi(p) = 1, as the tables assume.
MultChar unit_normalized(const MultChar& chi) { return chi.with_value_at_p(CycScalar(1)); }

CycScalar q_half_power(long p, int n) {  // q^{n/2}
  CycScalar r = ppow(p, n >= 0 ? n / 2 : -((-n + 1) / 2));
  if (n % 2 != 0) r *= CycScalar::sqrt_q(p);
  return r;
}

}  // namespace

CycScalar gauss_brute(const MultChar& chi, const Rational& x) {
  const long p = chi.p();
  const AddChar add(x, p);
  const int vx = x == 0 ? 0 : valuation(x, p);
  const long mod = unit_modulus(p, std::max(chi.conductor(), -vx));
  const Rational w(1, mod / p * (p - 1));
  // chi(u) psi(x u) as a single root of unity of order lcm(phi(p^c), n)
  const long lv = lcm_l(chi.unit_order(), add.n);
  CycBuilder acc(lv);
  for (long u = 1; u < mod; ++u) {
    if (u % p == 0) continue;
    long e = 0;
    if (chi.conductor() > 0) e += chi.unit_log_residue(u) * (lv / chi.unit_order());
    e += (add.k * (u % add.n)) % add.n * (lv / add.n);
    acc.add_root(lv, e % lv, w);
  }
  return acc.build();
}

GL1Epsilon epsilon_gl1(const MultChar& chi) {
  const int c = chi.conductor();
  if (c == 0) return {CycScalar(1), 0, chi.p()};
  // x = p^{-c} u, |x|^{-s} = X^c, each class p^{-c}(u + p^c O) has volume 1
  const long p = chi.p();
  const long mod = ipow(p, c);
  const long lv = lcm_l(chi.unit_order(), mod);
  const MultChar inv = chi.inverse();
  CycBuilder acc(lv);
  for (long u = 1; u < mod; ++u) {
    if (u % p == 0) continue;
    long e = inv.unit_log_residue(u) * (lv / inv.unit_order()) + u * (lv / mod);
    acc.add_root(lv, e % lv, 1);
  }
  // chi^{-1}(p^{-c}) = chi(p)^c
  return {acc.build() * chi.value_at_p().pow(c), c, p};
}

CycScalar GL1Epsilon::at_half() const {
  if (x_power == 0) return constant;
  return constant * q_half_power(p, -x_power);
}

namespace {

CycScalar eps_half(const MultChar& chi) {
  GL1Epsilon e = epsilon_gl1(chi);
  if (e.x_power == 0) return e.constant;
  return e.constant * q_half_power(chi.p(), -e.x_power);
}

}  // namespace

CycScalar gauss_closed(const MultChar& chi_in, const Rational& x, GaussConvention conv) {
  const MultChar chi = unit_normalized(chi_in);
  const long p = chi.p();
  const int c = chi.conductor();
  const int vx = x == 0 ? kInfVal : valuation(x, p);
  const Rational q(p);
  if (c == 0) {
    if (vx >= 0) return CycScalar(1);
    if (vx == -1) return conv == GaussConvention::Direct ? CycScalar(Rational(-1, p - 1))
                                                         : CycScalar(Rational(-p, p - 1));
    return CycScalar();
  }
  if (vx != -c) return CycScalar();
  const MultChar inv = chi.inverse();
  return CycScalar(q / (q - 1)) * q_half_power(p, -c) * eps_half(inv) * inv(x);
}

SumValue gauss(const MultChar& chi, const Rational& x, SumMode mode, GaussConvention conv) {
  if (mode == SumMode::Brute) return {gauss_brute(chi, x), mode};
  return {gauss_closed(chi, x, conv), mode};
}

CycScalar partial_gauss_brute(const MultChar& chi, int l, const Rational& x) {
  if (l < 1) throw DomainError("partial_gauss: l must be positive");
  const long p = chi.p();
  const AddChar add(x, p);
  const int vx = x == 0 ? 0 : valuation(x, p);
  const int m = std::max({chi.conductor(), -vx, l});
  const long mod = ipow(p, m);
  const long step = ipow(p, l);
  const long lv = lcm_l(chi.unit_order(), add.n);
  // 1 + p^l O has d^x-volume 1/((q-1) q^{l-1}); it splits into p^{m-l} classes
  const Rational w = Rational(1, (p - 1) * ipow(p, l - 1)) / Rational(mod / step);
  CycBuilder acc(lv);
  for (long y = 1; y < mod; y += step) {
    long e = 0;
    if (chi.conductor() > 0) e += chi.unit_log_residue(y) * (lv / chi.unit_order());
    e += (add.k * (y % add.n)) % add.n * (lv / add.n);
    acc.add_root(lv, e % lv, w);
  }
  return acc.build();
}

CycScalar partial_gauss_closed(const MultChar& chi_in, int l, const Rational& x) {
  if (l < 1) throw DomainError("partial_gauss: l must be positive");
  const MultChar chi = unit_normalized(chi_in);
  const long p = chi.p();
  const int c = chi.conductor();
  const Rational q(p);
  const Rational lead = q / (q - 1);
  if (x == 0) return l >= c ? CycScalar(lead * ppow(p, -l)) : CycScalar();
  const int a = valuation(x, p);
  const Rational u = unit_part(x, p);
  if (l >= c) {
    if (a < -l) return CycScalar();
    return CycScalar(lead * ppow(p, -l)) * psi(x, p);
  }
  if (a != -c) return CycScalar();
  const long b = b_chi(chi);
  if (l <= c / 2) {
    if (mod_pos(residue(u, p, l) + b, ipow(p, l)) != 0) return CycScalar();
    const MultChar inv = chi.inverse();
    return CycScalar(lead) * q_half_power(p, a) * eps_half(inv) * inv(u);
  }
  // ceil(c/2) <= l < c
  const int depth = c - l;
  if (mod_pos(residue(u, p, depth) + b, ipow(p, depth)) != 0) return CycScalar();
  return CycScalar(lead * ppow(p, -l)) * psi(x, p);
}

SumValue partial_gauss(const MultChar& chi, int l, const Rational& x, SumMode mode) {
  if (mode == SumMode::Brute) return {partial_gauss_brute(chi, l, x), mode};
  return {partial_gauss_closed(chi, l, x), mode};
}

// ---------------------------------------------------------------- quadratic extension sums

namespace {

// Sum over units u of O_E mod p_E^m of xi(u) * psi(f(u)), each with weight w.
template <class F>
CycScalar e_unit_sum(const ECharacter& xi, int m, const Rational& w, F&& add_arg) {
  const QuadExt& E = xi.ext();
  const long p = E.p();
  CycBuilder acc(xi.unit_order());
  for (const EElt& u : E.residues(m)) {
    if (!E.is_unit(u)) continue;
    const auto [n, k] = psi_root(add_arg(u), p);
    const long lv = lcm_l(xi.unit_order(), n);
    const long e = xi.unit_log(u) * (lv / xi.unit_order()) + k * (lv / n);
    acc.add_root(lv, e % lv, w);
  }
  return acc.build();
}

}  // namespace

CycScalar epsilon_half_e(const ECharacter& xi) {
  const QuadExt& E = xi.ext();
  const long p = E.p();
  const int f = E.f(), e = E.e();
  const int c = xi.conductor();
  const int n = 1 - e - c;
  const int m = std::max(c, 1);
  const EElt pin = E.pow(E.uniformizer(), n);
  const ECharacter inv = xi.inverse();
  // d_E(p_E^n (u + p_E^m)) = q^{-f n} q^{(1-e)/2} q^{-f m}; |x|_E^{-1/2} = q^{f n / 2}
  const Rational w = ppow(p, -f * n - f * m);
  CycScalar s = e_unit_sum(inv, m, w, [&](const EElt& u) -> Rational { return E.trace(E.mul(pin, u)); });
  return s * measure::additive_oe(E) * q_half_power(p, f * n) * inv.value_at_uniformizer().pow(n);
}

CycScalar gamma_const(const QuadExt& E) {
  if (E.eta_conductor() == 0) return CycScalar(1);
  const long p = E.p();
  // numerator: int_{O^x} eta(x) psi(x / p) dx, modulus q^{-1/2}
  CycBuilder acc(p);
  for (long u = 1; u < p; ++u) acc.add_root(p, u, Rational(E.eta(Rational(u)), p));
  return CycScalar(E.eta(Rational(p))) * acc.build() * CycScalar::sqrt_q(p);
}

int k_sum_level(const ECharacter& xi, const EElt& a, const Rational& b) {
  const QuadExt& E = xi.ext();
  int m = std::max(xi.conductor(), 1);
  const bool a_zero = a.a == 0 && a.b == 0;
  if (!a_zero) {
    // Tr(A p_E^M O_E) in O: inert needs v_E(A) + M >= 0, ramified v_E(A) + M >= -1
    const int va = E.valuation(a);
    m = std::max(m, E.e() == 1 ? -va : -va - 1);
  }
  if (b != 0) {
    const int vb = valuation(b, E.p());
    // B Nr(x) (Tr w + Nr w) in O for w in p_E^M O_E
    if (vb < 0) m = std::max(m, E.e() == 1 ? -vb : -2 * vb);
  }
  return m;
}

CycScalar k_sum(const ECharacter& xi, const EElt& a, const Rational& b, std::optional<int> level) {
  const QuadExt& E = xi.ext();
  const int m = level ? *level : k_sum_level(xi, a, b);
  if (m < k_sum_level(xi, a, b)) throw DomainError("k_sum: level below invariance level");
  const Rational w = ppow(E.p(), -E.f() * m);
  CycScalar s = e_unit_sum(xi, m, w, [&](const EElt& u) -> Rational {
    return E.trace(E.mul(a, u)) + b * E.norm(u);
  });
  return s * measure::additive_oe(E);
}

CycScalar k_split(const MultChar& chi1, const MultChar& chi2, int a1, int a2, const Rational& v,
                  int a) {
  const long p = chi1.p();
  if (chi2.p() != p) throw DomainError("k_split: characters over different primes");
  const int m = std::max({chi1.conductor(), chi2.conductor(), a1, a2, a + std::max(0, -valuation(v, p)), 1});
  const long mod = ipow(p, m);
  const Rational x1c = ppow(p, -a1), x2c = ppow(p, -a2), bc = v * ppow(p, -a);
  const long count = mod / p * (p - 1);
  const Rational w(1, count * count);
  const long lchi = lcm_l(chi1.unit_order(), chi2.unit_order());
  CycBuilder acc(lcm_l(lchi, mod));
  for (long x1 = 1; x1 < mod; ++x1) {
    if (x1 % p == 0) continue;
    for (long x2 = 1; x2 < mod; ++x2) {
      if (x2 % p == 0) continue;
      const auto [n, k] = psi_root(x1c * x1 + x2c * x2 + bc * x1 * x2, p);
      const long lv = lcm_l(lchi, n);
      long e = k * (lv / n);
      if (chi1.conductor() > 0) e += chi1.unit_log_residue(x1) * (lv / chi1.unit_order());
      if (chi2.conductor() > 0) e += chi2.unit_log_residue(x2) * (lv / chi2.unit_order());
      acc.add_root(lv, e % lv, w);
    }
  }
  return acc.build();
}

CycScalar s_sum(long p, const Rational& a, const Rational& b, int m) {
  if (m < 1) throw DomainError("s_sum: m must be positive");
  const Rational ac = a * ppow(p, -m), bc = b * ppow(p, -m);
  int depth = 1;
  if (ac != 0) depth = std::max(depth, -valuation(ac, p));
  if (bc != 0) depth = std::max(depth, -valuation(bc, p));
  const long mod = ipow(p, depth);
  const Rational w(1, mod / p * (p - 1));
  CycBuilder acc(mod);
  for (long x = 1; x < mod; ++x) {
    if (x % p == 0) continue;
    const auto [n, k] = psi_root(ac * x + bc * mod_inverse(x, mod), p);
    acc.add_root(n, k, w);
  }
  return acc.build();
}

}  // namespace rsz
