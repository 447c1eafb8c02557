#include "rsz/whittaker.hpp"

#include "rsz/sums.hpp"

namespace rsz {

namespace {

// q^{n/2}
CycScalar q_half(long p, int n) {
  CycScalar r = ppow(p, n >= 0 ? n / 2 : -((-n + 1) / 2));
  if (n % 2 != 0) r *= CycScalar::sqrt_q(p);
  return r;
}

bool congruent(const Rational& x, long b, long p, int m) {
  return m <= 0 || residue(x, p, m) == mod_pos(b, ipow(p, m));
}

CycScalar twist_of(const LocalRep& pi) {
  if (auto* h = pi.as<HalfRamifiedPS>()) return h->twist;
  if (auto* s = pi.as<Supercuspidal>()) return s->twist;
  return 1;
}

}  // namespace

NewVector::NewVector(LocalRep pi) : pi_(std::move(pi)), c_(rsz::conductor(pi_)), omega_(central_char(pi_)) {
  if (!pi_.whittaker_supported())
    throw UnsupportedClass("no new-vector table for " + rep_class_name(pi_.cls()) +
                           " (values for this class come from the external coset tables)");
}

WhittakerValue NewVector::table(int t, int k, const Rational& v) const {
  const long p = pi_.p();
  const int c = c_;
  const CycScalar q_inv = CycScalar(Rational(1, p));
  WhittakerValue off{CycScalar(0), false};

  if (auto* u = pi_.as<UnramifiedPS>()) {
    if (t < 0) return off;
    (void)u;
    return {schur_norm(t, pi_), true};
  }

  if (auto* st = pi_.as<SteinbergUnr>()) {
    const CycScalar chi_det = st->chi_p.pow(t);
    if (k == 0 && t >= -1) return {-chi_det * q_inv.pow(t + 1), true};
    if (k == 1 && t >= -2) {
      const Rational vi = 1 / v;
      return {chi_det * CycScalar(ppow(p, -t - 2)) * psi(-ppow(p, t + 1) * vi, p), true};
    }
    return off;
  }

  if (auto* h = pi_.as<HalfRamifiedPS>()) {
    // Stored verbatim for W^new*_{pi^vee}; W^new_pi(g) = omega_pi(det g) W^new*_{pi^vee}(g).
    const MultChar& om = h->omega;
    const CycScalar& chi = h->chi_p;
    const CycScalar eps = epsilon_gl1(om).at_half();
    const Rational vi = 1 / v;
    CycScalar w;
    bool in = false;
    if (k == 0 && t >= -c) {
      w = chi.pow(t + 2 * c) * q_half(p, -(t + c)) * eps;
      in = true;
    } else if (k > 0 && k <= c / 2 && t == -c - k) {
      const MultChar omi = om.inverse();
      const long binv = mod_inverse(b_chi(omi), ipow(p, k));
      if (congruent(v, binv, p, k)) {
        w = q_half(p, k) * chi.pow(-t - 2 * k) * eps;
        in = true;
      }
    } else if (k >= (c + 1) / 2 && k < c && t == -c - k) {
      const MultChar omi = om.inverse();
      const long binv = mod_inverse(b_chi(omi), ipow(p, c - k));
      if (congruent(v, binv, p, c - k)) {
        w = om.inverse()(-vi) * psi(-vi * ppow(p, t + k), p) * chi.pow(-t - 2 * k) * q_half(p, c - k);
        in = true;
      }
    } else if (k == c && t >= -2 * k) {
      w = om.inverse()(-vi) * q_half(p, -(t + 2 * k)) * chi.pow(-t - 2 * k) * psi(-vi * ppow(p, t + k), p);
      in = true;
    }
    if (!in) return off;
    // omega_pi(det g_{t,k,v}) = omega(p^t) = 1 before the unramified twist
    return {om(ppow(p, t)) * w, true};
  }

  if (auto* sc = pi_.as<Supercuspidal>()) {
    const ECharacter& xi = sc->xi;
    const QuadExt& e = xi.ext();
    if (k == 0 && t == -c) return {gamma_const(e) * epsilon_half_e(xi), true};
    if (k == c && t == -2 * k) {
      const Rational vi = 1 / v;
      return {omega_.inverse()(-vi) * psi(-vi * ppow(p, -c), p), true};
    }
    const bool half_row = 2 * k == c && t >= -c && t < 0;
    const bool mid_row = k != 0 && 2 * k != c && k != c && t == -std::max(c, 2 * k);
    if (half_row || mid_row) {
      if (t % e.f() != 0) return {CycScalar(0), true};
      const EElt a = e.pow(e.uniformizer(), t / e.f());
      // u = Nr(pi_E) / p^f. When u != 1 the table holds for the base uniformizer u p; moving back to p
      // rescales v by u^{t+k}, and untwisting by the unramified chi with chi(p)^2 = omega(u) leaves
      // omega(u)^{-t/2}.
      const Rational u = e.norm(e.uniformizer()) / ppow(p, e.f());
      Rational b = v * ppow(p, -k);
      CycScalar unit_factor = 1;
      if (u != 1) {
        for (int i = 0; i < std::abs(t); ++i) {
          if (t > 0) b *= u;
          else b /= u;
        }
        if (t % 2 == 0) unit_factor = omega_(u).pow(-t / 2);
      }
      const CycScalar kv = k_sum(xi.inverse(), a, b);
      if (u != 1 && t % 2 != 0 && !kv.is_zero())
        throw UnsupportedClass("odd row of a supercuspidal whose uniformizer norm is not p needs chi(p)");
      // Sign fixed by the vanishing of K- and K_1-averages (no fixed vectors below conductor c).
      return {-gamma_const(e) * q_half(p, -t) * unit_factor * kv, true};
    }
    return off;
  }
  throw UnsupportedClass("no new-vector table for " + rep_class_name(pi_.cls()));
}

WhittakerValue NewVector::at_coset(int t, int k, const Rational& v) const {
  if (k < 0 || k > c_) throw DomainError("at_coset: k outside [0, c]");
  if (v == 0 || valuation(v, pi_.p()) != 0) throw DomainError("at_coset: v must be a unit");
  const long key_v = c_ == 0 ? 0 : residue(v, pi_.p(), c_);
  const auto key = std::make_tuple(t, k, key_v);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  WhittakerValue w = table(t, k, v);
  const CycScalar tw = twist_of(pi_);
  if (w.in_support && !tw.is_one()) w.value *= tw.pow(t);
  cache_.emplace(key, w);
  return w;
}

CycScalar NewVector::operator()(const Mat2& g, int psi_sign) const {
  const long p = pi_.p();
  const Mat2 h = psi_sign < 0 ? Mat2::diag(-1, 1) * g : g;
  const CosetDatum d = decompose(h, p, c_);
  const WhittakerValue w = at_coset(d.t, d.k, Rational(d.v));
  if (!w.in_support || w.value.is_zero()) return 0;
  return omega_(d.z) * psi(d.x, p) * w.value;
}

WhittakerValue eval_coset(const LocalRep& pi, int t, int k, const Rational& v) {
  return NewVector(pi).at_coset(t, k, v);
}

CycScalar eval_general(const LocalRep& pi, const Mat2& g, int psi_sign) { return NewVector(pi)(g, psi_sign); }

ConjNewReport conj_new_check(const LocalRep& pi, int t_min, int t_max,
                             const std::function<CycScalar(int, int, long, const CycScalar&)>& corrupt) {
  const long p = pi.p();
  const NewVector w(pi);
  const NewVector wd(dual(pi));
  const int c = w.conductor();
  const Mat2 a{0, ppow(p, -c), 1, 0};
  const CycScalar wa = wd(a);
  ConjNewReport rep;
  if (wa.is_zero()) {
    rep.ok = false;
    rep.first_failure = "W^new_{pi^vee}(A) vanishes";
    return rep;
  }
  const CycScalar wa_inv = wa.inverse();
  const long mod = ipow(p, c);
  for (int t = t_min; t <= t_max; ++t) {
    for (int k = 0; k <= c; ++k) {
      for (long v = 1; v < std::max(mod, 2L); ++v) {
        if (v % p == 0) continue;
        const Mat2 g = g_tkv(p, t, k, Rational(v));
        CycScalar lhs = w.at_coset(t, k, Rational(v)).value;
        if (corrupt) lhs = corrupt(t, k, v, lhs);
        const CycScalar rhs = w.central()(g.det()) * wd(g * a) * wa_inv;
        ++rep.checked;
        if (!(lhs == rhs) && rep.ok) {
          rep.ok = false;
          rep.first_failure = "t=" + std::to_string(t) + " k=" + std::to_string(k) + " v=" + std::to_string(v) +
                              ": " + lhs.str() + " vs " + rhs.str();
        }
      }
    }
  }
  return rep;
}

}  // namespace rsz
