#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rsz/cyclotomic.hpp"

namespace rsz {

// psi(x) = exp(2 pi i {x}_p); conductor Z_p.
CycScalar psi(const Rational& x, long p);
// psi(x) as (n, k) with psi(x) = zeta_n^k.
std::pair<long, long> psi_root(const Rational& x, long p);

// Discrete logarithms on (Z/p^c)^x for a fixed generator that is primitive modulo every p^c.
class DlogTable {
 public:
  static std::shared_ptr<const DlogTable> get(long p, int c);
  long p() const { return p_; }
  int c() const { return c_; }
  long modulus() const { return mod_; }
  long order() const { return order_; }
  long generator() const { return g_; }
  // -1 for residues divisible by p
  long log(long r) const { return log_[size_t(mod_pos(r, mod_))]; }

 private:
  DlogTable(long p, int c);
  long p_, mod_, order_, g_;
  int c_;
  std::vector<long> log_;
};

long primitive_root(long p);

// Character of Q_p^x: chi(p^n u) = value_at_p^n * zeta_{phi(p^c)}^{exp * dlog(u)}.
class MultChar {
 public:
  MultChar(long p, int c, long exp, CycScalar value_at_p = CycScalar(1));
  static MultChar trivial(long p) { return MultChar(p, 0, 0); }
  static MultChar unramified(long p, CycScalar value) { return MultChar(p, 0, 0, std::move(value)); }

  long p() const { return p_; }
  int conductor() const { return c_; }
  long exponent() const { return exp_; }
  long unit_order() const { return order_; }  // phi(p^c), 1 when c = 0
  const CycScalar& value_at_p() const { return at_p_; }

  // chi(u) = zeta_{unit_order}^{unit_log(u)} for a p-adic unit u.
  long unit_log(const Rational& u) const;
  long unit_log_residue(long r) const;  // r an integer unit
  CycScalar on_unit(const Rational& u) const;
  CycScalar operator()(const Rational& x) const;

  MultChar inverse() const;
  MultChar operator*(const MultChar& o) const;
  MultChar with_value_at_p(CycScalar v) const { return MultChar(p_, c_, exp_, std::move(v)); }
  bool operator==(const MultChar& o) const;
  std::string str() const;

 private:
  long p_;
  int c_;
  long exp_;
  long order_;
  CycScalar at_p_;
  std::shared_ptr<const DlogTable> table_;
};

// b with chi(1 + x) = psi(b p^{-c} x) for all v(x) >= ceil(c/2); class mod p^{floor(c/2)}.
long b_chi(const MultChar& chi);

// ---------------------------------------------------------------- quadratic extensions

enum class ExtKind { Inert, Ramified1, Ramified2 };
std::string ext_kind_name(ExtKind k);
ExtKind ext_kind_from_name(const std::string& s);

// Element a + b sqrt(D).
struct EElt {
  Rational a, b;
  bool operator==(const EElt&) const = default;
};

// E = Q_p(sqrt D): D a non-residue unit (inert), D = -p (Ramified1),
// D = -e p with e a non-residue (Ramified2, uniformizer norm e p).
class QuadExt {
 public:
  QuadExt(long p, ExtKind kind);
  long p() const { return p_; }
  ExtKind kind() const { return kind_; }
  const Rational& d() const { return d_; }
  int e() const { return kind_ == ExtKind::Inert ? 1 : 2; }
  int f() const { return kind_ == ExtKind::Inert ? 2 : 1; }
  long residue_size() const { return f() == 2 ? p_ * p_ : p_; }

  EElt mul(const EElt& x, const EElt& y) const { return {x.a * y.a + d_ * x.b * y.b, x.a * y.b + x.b * y.a}; }
  EElt inv(const EElt& x) const;
  EElt conj(const EElt& x) const { return {x.a, -x.b}; }
  Rational norm(const EElt& x) const { return x.a * x.a - d_ * x.b * x.b; }
  Rational trace(const EElt& x) const { return 2 * x.a; }
  EElt uniformizer() const;
  EElt pow(const EElt& x, int n) const;
  int valuation(const EElt& x) const;  // normalized valuation of E
  // Residue class of a unit of O_E in the residue field, as an index in [0, residue_size).
  long residue_index(const EElt& unit) const;
  // Residue classes of O_E / p_E^m as representatives a + b sqrt(D) (all, units first flagged).
  std::vector<EElt> residues(int m) const;
  bool is_unit(const EElt& x) const { return valuation(x) == 0; }

  // eta_{E/F}(x) = +-1.
  int eta(const Rational& x) const;
  int eta_conductor() const { return kind_ == ExtKind::Inert ? 0 : 1; }

 private:
  long p_;
  ExtKind kind_;
  Rational d_;
};

// Character of E^x of conductor <= 1: trivial on 1 + p_E O_E, a power of a generator of the
// residue field units, and value_at_uniformizer on the chosen uniformizer.
class ECharacter {
 public:
  ECharacter(QuadExt ext, long exp, CycScalar value_at_uniformizer);
  // Central character normalization eta * xi|_F (p) = 1 fixes the uniformizer value up to the
  // choice made here (documented): inert -1; ramified a root of unity.
  static ECharacter normalized(const QuadExt& ext, long exp);

  const QuadExt& ext() const { return ext_; }
  int conductor() const { return exp_ % order_ == 0 ? 0 : 1; }
  long exponent() const { return exp_; }
  long unit_order() const { return order_; }  // q^f - 1
  const CycScalar& value_at_uniformizer() const { return at_pi_; }

  long unit_log(const EElt& u) const;  // xi(u) = zeta_{unit_order}^{result}
  CycScalar operator()(const EElt& x) const;
  CycScalar on_base(const Rational& x) const { return (*this)({x, 0}); }
  ECharacter inverse() const;
  ECharacter operator*(const ECharacter& o) const;
  ECharacter galois_conjugate() const;
  bool regular() const;
  bool operator==(const ECharacter& o) const;

  // eta * xi restricted to Q_p^x, as a MultChar (conductor <= 1).
  MultChar central_character() const;
  std::string str() const;

 private:
  QuadExt ext_;
  long exp_;
  long order_;
  CycScalar at_pi_;
  long gen_index_;                    // residue index of the generator
  std::vector<long> log_;             // residue index -> discrete log, -1 for zero
};

}  // namespace rsz
