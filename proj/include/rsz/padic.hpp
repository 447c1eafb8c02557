#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rsz/rational.hpp"

namespace rsz {

// 2x2 matrix over Q, viewed inside GL2(Q_p).
struct Mat2 {
  Rational a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {}; }
  static Mat2 diag(const Rational& x, const Rational& y) { return {x, 0, 0, y}; }
  static Mat2 unipotent(const Rational& x) { return {1, x, 0, 1}; }
  static Mat2 scalar(const Rational& z) { return {z, 0, 0, z}; }

  Rational det() const { return a * d - b * c; }
  Mat2 inverse() const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  bool operator==(const Mat2& o) const = default;
  // smallest valuation among the entries
  int min_valuation(long p) const;
  bool integral(long p) const { return min_valuation(p) >= 0; }
  std::array<Rational, 4> entries() const { return {a, b, c, d}; }
  std::string str() const;
};

// g_{t,k,v} = [[0, p^t], [-1, -v p^{-k}]].
Mat2 g_tkv(long p, int t, int k, const Rational& v);

// Membership in K_c = {[[a,b],[c,d]] in GL2(O): c in p^c O, d in 1 + p^c O}; c = 0 is GL2(O).
bool in_k(const Mat2& g, long p, int c);

// g = z * n(x) * g_{t,k,v} * kappa with kappa in K_c.
struct CosetDatum {
  int t = 0;
  int k = 0;
  long v = 1;  // unit representative modulo p^{min(k, c-k)}
  Rational z;
  Rational x;
  Mat2 kappa;
};

// Throws DomainError if no decomposition is found (never expected for invertible g).
CosetDatum decompose(const Mat2& g, long p, int c);
// z n(x) g_{t,k,v} kappa
Mat2 reconstruct(const CosetDatum& d, long p);

// Z_p-lattice {z in Q_p^n : r . z in Z_p for every condition row r}.
class Lattice {
 public:
  explicit Lattice(int dim) : n_(dim) {}
  int dim() const { return n_; }
  // requires row . z in p^e Z_p
  void require(std::vector<Rational> row, int e, long p);
  void require_coordinate(int i, int e, long p);
  const std::vector<std::vector<Rational>>& rows() const { return rows_; }
  Lattice intersect(const Lattice& o) const;

  struct Shape {
    int log_measure = 0;  // additive measure of the lattice is p^{log_measure}
    std::vector<std::vector<Rational>> basis;
  };
  // Throws DomainError for unbounded (rank-deficient) conditions.
  Shape shape(long p) const;
  bool contains(const std::vector<Rational>& z, long p) const;

 private:
  int n_;
  std::vector<std::vector<Rational>> rows_;
};

// Solution set {z : rows[i] . z + consts[i] in Z_p for all i} = point + lattice.
struct AffineLattice {
  std::vector<Rational> point;
  std::vector<std::vector<Rational>> basis;
  int log_measure = 0;
};
// nullopt when empty; throws DomainError when unbounded.
std::optional<AffineLattice> solve_affine(const std::vector<std::vector<Rational>>& rows,
                                          const std::vector<Rational>& consts, int dim, long p);

// For an integral affine lattice Y0 + span(basis) in M2(O) (coordinates a, b, c, d), the
// proportion of its additive measure where det(I + Y) is a unit.
Rational unit_det_fraction(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& basis,
                           long p);

// Compact open subgroup of the form (I + L) intersected with GL2(O), where L is a
// lattice ring inside M2(O) written on the entries (a, b, c, d).
class OpenCompact {
 public:
  OpenCompact(long p, Lattice lie, std::string tag);
  static OpenCompact k_level(long p, int c);
  static OpenCompact full(long p) { return k_level(p, 0); }
  // {g : g = I + Y, Y in L} from a predicate-free lattice
  long prime() const { return p_; }
  const Lattice& lie() const { return lie_; }
  const std::string& tag() const { return tag_; }
  // smallest M with I + p^M M2(O) inside the group
  int level() const;
  bool contains(const Mat2& g) const;

  OpenCompact intersect(const OpenCompact& o) const;
  // A U A^{-1}, clipped to GL2(O)
  OpenCompact conjugate(const Mat2& a) const;
  // Stabilizer of r modulo p^m: {k : r (k - 1) in p^m O^2}
  OpenCompact row_stabilizer(const Rational& r1, const Rational& r2, int m) const;
  // Stabilizer of the line through a primitive row modulo p^m: {k : r k in O r + p^m O^2}
  OpenCompact line_stabilizer(const Rational& r1, const Rational& r2, int m) const;
  // Integral Z_p-basis of the Lie lattice (rows on a, b, c, d).
  std::vector<std::vector<Rational>> lie_basis() const { return lie_.shape(p_).basis; }

  // Haar volume with vol(GL2(O)) = 1, from the lattice shape.
  Rational volume() const;
  // Same, by counting residues in GL2(Z/p^M) (M defaults to level()).
  Rational volume_by_count(int m = -1) const;

 private:
  long p_;
  Lattice lie_;
  std::string tag_;
};

// Left coset representatives of big / small by enumeration modulo p^M.
std::vector<Mat2> enumerate_quotient(const OpenCompact& big, const OpenCompact& small, int m = -1);

// Haar volume of P cap g K g^{-1} (P = {[[*,*],[0,1]]}, vol P(O) = 1) for the subgroup of H
// given by the Lie lattice of an OpenCompact in conjugated position: conditions on (a, b).
Rational volume_p(const Lattice& p_lie, long p);

// Lie lattice of P cap (intersection of g_i K_{c_i} g_i^{-1}), as conditions on (a, b).
Lattice p_lie_of_conjugates(long p, const std::vector<std::pair<Mat2, int>>& gk);

}  // namespace rsz
