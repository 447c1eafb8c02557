#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsz/cyclotomic.hpp"

namespace rsz {

// Finite Laurent polynomial in X (X stands for q^{-s}); zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const CycScalar& c) { set(0, c); }  // NOLINT(implicit)
  static LaurentPoly monomial(int pow, const CycScalar& c);

  const std::map<int, CycScalar>& coeffs() const { return c_; }
  CycScalar coeff(int n) const;
  void set(int n, const CycScalar& c);
  void add(int n, const CycScalar& c);
  bool is_zero() const { return c_.empty(); }
  int min_degree() const;
  int max_degree() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  LaurentPoly operator-() const;
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly shift(int k) const;
  LaurentPoly truncate(int max_pow) const;
  CycScalar eval_at_one() const;
  LaurentPoly conj() const;
  LaurentPoly substitute(const std::string& name, const CycScalar& v) const;

  // Exact quotient by (1 - c X^d); nullopt when (1 - c X^d) does not divide.
  std::optional<LaurentPoly> divide_one_minus(const CycScalar& c, int d) const;

  std::string str() const;

 private:
  std::map<int, CycScalar> c_;
};

struct LFactor {
  CycScalar c;
  int d = 1;
  friend bool operator==(const LFactor&, const LFactor&) = default;
};

// Multiset {(c, d)} meaning prod (1 - c X^d)^{-1}.
class LFactorDescriptor {
 public:
  LFactorDescriptor() = default;
  explicit LFactorDescriptor(std::vector<LFactor> f);

  const std::vector<LFactor>& factors() const { return f_; }
  bool empty() const { return f_.empty(); }
  // prod (1 - c X^d)
  LaurentPoly inverse_poly() const;
  LFactorDescriptor operator*(const LFactorDescriptor& o) const;
  // Smallest multiset containing both.
  LFactorDescriptor lcm(const LFactorDescriptor& o) const;
  // Factors of *this not matched in o (multiset difference).
  LFactorDescriptor minus(const LFactorDescriptor& o) const;
  LFactorDescriptor substitute(const std::string& name, const CycScalar& v) const;
  std::string str() const;

 private:
  std::vector<LFactor> f_;
};

// Power series of prod (1 - c X^d)^{-1} through X^bound.
LaurentPoly series_expand(const LFactorDescriptor& l, int bound);

// The rational function poly * L with L given by l_part.
struct ZetaValue {
  LFactorDescriptor l_part;
  LaurentPoly poly;
};

ZetaValue operator+(const ZetaValue& a, const ZetaValue& b);
ZetaValue operator*(const ZetaValue& a, const LaurentPoly& f);
// Equality as rational functions, by cross-multiplication.
bool equivalent(const ZetaValue& a, const ZetaValue& b);

struct PoleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// z / L(target) as a Laurent polynomial; PoleMismatch when z has a pole outside target.
LaurentPoly renormalize(const ZetaValue& z, const LFactorDescriptor& target);

}  // namespace rsz
