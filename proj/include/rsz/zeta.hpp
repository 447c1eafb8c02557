#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "rsz/laurent.hpp"
#include "rsz/padic.hpp"
#include "rsz/reps.hpp"
#include "rsz/ring.hpp"
#include "rsz/whittaker.hpp"

namespace rsz {

// coeff times the indicator of the lattice coset w + O^2 m (rows of m span the lattice).
struct Cell {
  Rational w1, w2;
  Mat2 m;
  CycScalar coeff;

  bool contains(const Rational& x, const Rational& y, long p) const;
  // Largest e with the cell inside p^e O^2.
  int floor_valuation(long p) const;
  // Smallest e with p^e O^2 inside the lattice O^2 m.
  int fine_valuation(long p) const;
};

// Finite linear combination of cells on Q_p^2.
class SchwartzFn {
 public:
  explicit SchwartzFn(long p) : p_(p) {}
  static SchwartzFn lattice_indicator(long p, const CycScalar& coeff = 1);

  long prime() const { return p_; }
  const std::vector<Cell>& cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  // coeff * 1[(a + p^m O) x (b + p^n O)]
  void add_box(const Rational& a, const Rational& b, int m, int n, const CycScalar& coeff);
  void add_cell(Cell c);

  CycScalar operator()(const Rational& x, const Rational& y) const;
  SchwartzFn scaled(const CycScalar& c) const;
  // Merges cells describing the same coset and drops zero coefficients.
  SchwartzFn normalized() const;

 private:
  long p_;
  std::vector<Cell> cells_;
};

// (h . phi)(x) = phi(x h); the support moves to supp(phi) h^{-1}.
SchwartzFn schwartz_translate(const SchwartzFn& phi, const Mat2& h);
// phi(x) - phi(x / p)
SchwartzFn center_difference(const SchwartzFn& phi);

struct IndexBoundExceeded : DomainError {
  using DomainError::DomainError;
};
struct TailNotGeometric : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZetaOptions {
  long max_index = 100000;  // bound on enumerated projective lines
  int guard = 3;            // extra tail terms checked against the L-factor recurrence
};

// Subgroup of Stab(phi) within GL2(O): the common stabilizer of the cells.
OpenCompact cell_stabilizer(const SchwartzFn& phi);

struct IntegralDatumReport {
  Rational stab_volume;
  Rational required_ideal_generator;
  bool is_integral = false;
  std::string detail;
};
IntegralDatumReport integral_datum_check(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi);

// Largest projective line P^1(Z/p^L) that zeta or xi_c would enumerate for this datum.
long enumeration_size(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi);

// Finitely supported function on P \ G / K_Pi.
struct SupportedTerm {
  Mat2 g1, g2;
  CosetDatum d1, d2;
  CycScalar value;
};
struct SupportedFunctionOnPGK {
  long p = 0;
  std::vector<SupportedTerm> terms;
};

// Evaluation context for one pair; caches new-vector tables and inner integrals.
class ZetaEngine {
 public:
  explicit ZetaEngine(PiPair pi, ZetaOptions opts = {});

  const PiPair& pair() const { return pi_; }
  const LFactorDescriptor& l_factor() const { return l_; }
  const MultChar& central() const { return omega_; }
  int c1() const { return w1_.conductor(); }
  int c2() const { return w2_.conductor(); }
  // Vol(K_Pi) = vol(K_{c1}) vol(K_{c2})
  Rational vol_k() const { return vol_k_; }

  // Integral over y of W1(diag(y,1) g1) W2(diag(y,1) g2) |y|^{s-1}, slot 2 in the psi^{-1} model.
  ZetaValue i_new(const Mat2& g1, const Mat2& g2) const;
  // Z(phi, g1 W1, g2 W2; s) through the unfolding over H(O)
  ZetaValue zeta(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const;
  // Same integral without moving g1 to the identity first; for invariance checks.
  ZetaValue zeta_direct(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const;
  SupportedFunctionOnPGK xi_c(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const;
  ZetaValue lambda(const SupportedFunctionOnPGK& f) const;
  // Lambda(ch(P gamma K_Pi))
  ZetaValue lambda_term(const Mat2& g1, const Mat2& g2) const;

 private:
  ZetaValue zeta_frame(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const;
  ZetaValue row_integral(const SchwartzFn& phi, const Rational& r1, const Rational& r2) const;

  PiPair pi_;
  ZetaOptions opts_;
  NewVector w1_, w2_;
  MultChar omega_;
  LFactorDescriptor l_;
  Rational vol_k_;
  mutable std::map<std::tuple<int, int, long, int, int, long, Rational>, ZetaValue> inner_cache_;
};

ZetaValue i_new(const PiPair& pi, const Mat2& g1, const Mat2& g2);
ZetaValue zeta_unfolded(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                        const ZetaOptions& opts = {});
SupportedFunctionOnPGK xi_c(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                            const ZetaOptions& opts = {});
ZetaValue lambda(const SupportedFunctionOnPGK& f, const PiPair& pi, const ZetaOptions& opts = {});

// A = Z[1/q, mu_{nu q^tau}] with the class symbols of the pair; Satake symbols enter as Hecke pairs.
RingSpec theorem_ring(const PiPair& pi);

struct CertifyResult {
  IntegralDatumReport datum;
  ZetaValue z;
  ZetaValue lambda_value;
  LFactorDescriptor l_factor;
  LaurentPoly phi_poly;
  std::vector<std::pair<int, Membership>> verdicts;
  bool identity_check = false;
  bool all_members = false;
  bool ok() const { return datum.is_integral && identity_check && all_members; }
};

struct NotIntegralDatum : DomainError {
  IntegralDatumReport report;
  explicit NotIntegralDatum(IntegralDatumReport r)
      : DomainError("datum is not integral: " + r.detail), report(std::move(r)) {}
};

// Throws NotIntegralDatum (precondition) and PoleMismatch (theorem violation).
CertifyResult certify(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                      const RingSpec& ring, const ZetaOptions& opts = {});
CertifyResult certify(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                      const ZetaOptions& opts = {});

// Phi(phi, g; X) at X = 1; requires omega_1 omega_2 nontrivial
CycScalar trilinear(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                    const ZetaOptions& opts = {});

ZetaValue product(const ZetaValue& a, const ZetaValue& b);

}  // namespace rsz
