#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsz/rational.hpp"

namespace rsz {

// Product of formal invertible symbols, kept sorted by name with nonzero exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial symbol(const std::string& name, int exp = 1);

  Monomial operator*(const Monomial& o) const;
  Monomial inverse() const;
  Monomial pow(int n) const;
  bool is_one() const { return f_.empty(); }
  int exponent(const std::string& name) const;
  Monomial without(const std::string& name) const;
  const std::vector<std::pair<std::string, int>>& factors() const { return f_; }
  std::string str() const;

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<std::pair<std::string, int>> f_;
};

// Exact element of Q(zeta_N)[Q, symbols^{+-1}] with Q^2 = p.
// Stored on the canonical prime-power basis at the smallest level that holds it,
// so equal elements have identical term maps.
class CycScalar {
 public:
  struct Term {
    long zeta = 0;   // exponent of zeta_level
    int qdeg = 0;    // 0 or 1
    Monomial mono;
    Rational coeff;
  };

  CycScalar() = default;
  CycScalar(const Rational& r);  // NOLINT(implicit)
  CycScalar(long n) : CycScalar(Rational(n)) {}  // NOLINT(implicit)

  static CycScalar zeta(long n, long k);
  static CycScalar sqrt_q(long p);
  static CycScalar symbol(const std::string& name, int exp = 1);
  static CycScalar from_terms(long level, long p, const std::vector<Term>& terms);

  long level() const { return level_; }
  long prime() const { return p_; }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  std::optional<Rational> as_rational() const;
  bool has_symbols() const;
  bool has_sqrt() const;
  std::vector<Term> terms() const;
  // Terms expressed on the canonical basis at a multiple of level().
  std::vector<Term> terms_at(long level) const;
  std::vector<std::string> symbol_names() const;

  CycScalar& operator+=(const CycScalar& o);
  CycScalar& operator-=(const CycScalar& o);
  CycScalar& operator*=(const CycScalar& o);
  friend CycScalar operator+(CycScalar a, const CycScalar& b) { return a += b; }
  friend CycScalar operator-(CycScalar a, const CycScalar& b) { return a -= b; }
  friend CycScalar operator*(const CycScalar& a, const CycScalar& b);
  CycScalar operator-() const;
  friend bool operator==(const CycScalar& a, const CycScalar& b);

  // Throws DomainError for zero or for elements outside the unit group we can invert
  // (several distinct symbol monomials, or a zero divisor of the formal Q extension).
  CycScalar inverse() const;
  CycScalar pow(long n) const;
  // zeta -> zeta^{-1}, Q -> Q, symbol -> symbol^{-1}; rationals fixed.
  CycScalar conj() const;
  CycScalar substitute(const std::string& name, const CycScalar& value) const;
  // Coefficient of a given (qdeg, monomial) slice, as an element of Q(zeta).
  CycScalar slice(int qdeg, const Monomial& mono) const;

  std::string str() const;

 private:
  struct Key {
    Monomial mono;
    int qdeg = 0;
    long zeta = 0;
    auto operator<=>(const Key&) const = default;
  };
  using TermMap = std::map<Key, Rational>;

  static void add_to(TermMap& m, const Key& k, const Rational& c);
  static TermMap reduce(const TermMap& m, long level);
  void set_prime(long p);
  void normalize(TermMap raw, long level);
  TermMap lifted(long level) const;

  long level_ = 1;
  long p_ = 0;  // 0 until a Q term forces a prime
  TermMap t_;

  friend class CycBuilder;
};

// Accumulates many terms at a common level and normalizes once.
class CycBuilder {
 public:
  explicit CycBuilder(long level = 1) : level_(level) {}
  void add_root(long n, long k, const Rational& c);
  void add(const CycScalar& s);
  void add(const CycScalar& s, const Rational& c);
  CycScalar build() const;

 private:
  void grow(long level);
  long level_;
  long p_ = 0;
  CycScalar::TermMap t_;
};

// Euler phi and the canonical exponent set of Q(zeta_n); exposed for tests.
long euler_phi(long n);
std::vector<long> canonical_exponents(long n);

}  // namespace rsz
