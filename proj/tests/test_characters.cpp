#include <doctest.h>

#include <random>
#include <set>

#include "rsz/characters.hpp"

using namespace rsz;

TEST_CASE("additive character examples and properties") {
  CHECK(psi(Rational(1, 3), 3) == CycScalar::zeta(3, 1));
  CHECK(psi(Rational(4, 9), 3) == CycScalar::zeta(9, 4));
  CHECK(psi(Rational(7), 3) == CycScalar(1));
  CHECK(psi(Rational(2, 5), 3) == CycScalar(1));  // 2/5 is 3-integral
  std::mt19937 rng(1);
  std::uniform_int_distribution<long> n(-300, 300), d(0, 4);
  for (int i = 0; i < 200; ++i) {
    Rational x(n(rng), ipow(3, int(d(rng)))), y(n(rng), ipow(3, int(d(rng))) * (1 + 3 * 0));
    x.canonicalize();
    y.canonicalize();
    CHECK(psi(x + y, 3) == psi(x, 3) * psi(y, 3));
    CHECK((psi(x, 3) == CycScalar(1)) == (x == 0 || valuation(x, 3) >= 0));
  }
}

TEST_CASE("multiplicative character examples") {
  CHECK(MultChar::trivial(3)(Rational(243 * 7)) == CycScalar(1));
  MultChar quad(3, 1, 1);
  CHECK(quad(Rational(2)) == CycScalar(-1));
  MultChar sym(3, 1, 1, CycScalar::symbol("U"));
  CHECK(sym(Rational(9 * 2)) == CycScalar::symbol("U", 2) * CycScalar(-1));
}

TEST_CASE("characters are multiplicative with minimal conductor") {
  std::mt19937 rng(3);
  for (long p : {3L, 5L}) {
    for (int c = 1; c <= 3; ++c) {
      long ord = ipow(p, c - 1) * (p - 1);
      for (long e = 0; e < ord; e += 1 + ord / 7) {
        MultChar chi(p, c, e, CycScalar::zeta(4, 1));
        std::uniform_int_distribution<long> r(1, 1000);
        for (int i = 0; i < 10; ++i) {
          Rational x(r(rng), r(rng)), y(r(rng), r(rng));
          x.canonicalize();
          y.canonicalize();
          CHECK(chi(x * y) == chi(x) * chi(y));
        }
        int cc = chi.conductor();
        if (cc >= 1) {
          // nontrivial on 1 + p^{cc-1} (on the units when cc = 1)
          bool nontrivial = false;
          long mod = ipow(p, cc);
          for (long y = 0; y < mod && !nontrivial; ++y) {
            long u = cc == 1 ? y : 1 + ipow(p, cc - 1) * y;
            if (u % p == 0) continue;
            nontrivial = chi.unit_log(Rational(u)) != 0;
          }
          CHECK(nontrivial);
        }
        CHECK((chi * chi.inverse()).conductor() == 0);
      }
    }
  }
}

TEST_CASE("b_chi: characterization, example and inversion") {
  // generator 2 mod 9 -> zeta_6
  MultChar chi(3, 2, 1);
  CHECK(chi.on_unit(Rational(2)) == CycScalar::zeta(6, 1));
  long b = b_chi(chi);
  for (long y = 0; y < 3; ++y) CHECK(chi.on_unit(Rational(1 + 3 * y)) == CycScalar::zeta(9, 3 * b * y));
  CHECK(mod_pos(b_chi(chi.inverse()) + b, 3) == 0);
  CHECK_THROWS_AS(b_chi(MultChar(3, 1, 1)), DomainError);
  for (long p : {3L, 5L}) {
    for (int c = 2; c <= 3; ++c) {
      long ord = ipow(p, c - 1) * (p - 1);
      for (long e = 1; e < ord; ++e) {
        MultChar x(p, c, e);
        if (x.conductor() != c) continue;
        long bx = b_chi(x);
        int hi = (c + 1) / 2;
        long mod = ipow(p, c);
        for (long t = 0; t < mod; t += ipow(p, hi)) {
          Rational lhs = Rational(x.unit_log(Rational(1 + t)), x.unit_order());
          Rational arg = Rational(bx * t, mod);
          lhs.canonicalize();
          CHECK(CycScalar::zeta(x.unit_order(), x.unit_log(Rational(1 + t))) == psi(arg, p));
        }
        CHECK(mod_pos(b_chi(x.inverse()) + bx, ipow(p, c / 2)) == 0);
      }
    }
  }
}

TEST_CASE("norm and trace") {
  QuadExt in(3, ExtKind::Inert), r1(3, ExtKind::Ramified1);
  EElt x{Rational(5, 2), 0};
  CHECK(in.norm(x) == Rational(25, 4));
  CHECK(in.trace(x) == 5);
  CHECK(in.norm(in.uniformizer()) == 9);
  CHECK(in.trace(in.uniformizer()) == 6);
  CHECK(r1.norm(r1.uniformizer()) == 3);
  CHECK(r1.trace(r1.uniformizer()) == 0);
}

TEST_CASE("eta agrees with the norm image") {
  for (long p : {3L, 5L}) {
    for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2}) {
      QuadExt e(p, k);
      // norms of units of O_E modulo p^2, and of elements of valuation one
      std::set<long> unit_norms, val1_norms;
      for (const auto& x : e.residues(4)) {
        Rational n = e.norm(x);
        if (e.is_unit(x)) unit_norms.insert(residue(n, p, 2));
        EElt y = e.mul(x, e.uniformizer());
        if (e.is_unit(x) && valuation(e.norm(y), p) == (e.f() == 2 ? 2 : 1))
          val1_norms.insert(residue(e.norm(y) / ppow(p, e.f() == 2 ? 2 : 1), p, 2));
      }
      for (long u = 1; u < p * p; ++u) {
        if (u % p == 0) continue;
        CHECK((e.eta(Rational(u)) == 1) == (unit_norms.count(u) > 0));
        if (e.f() == 1) CHECK((e.eta(Rational(u * p)) == 1) == (val1_norms.count(u) > 0));
      }
      if (e.f() == 2) CHECK(e.eta(Rational(p)) == -1);
    }
  }
}

TEST_CASE("E-characters: regularity and central character") {
  for (long p : {3L, 5L}) {
    for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2}) {
      QuadExt e(p, k);
      long ord = e.residue_size() - 1;
      for (long a = 1; a < ord; ++a) {
        ECharacter xi = ECharacter::normalized(e, a);
        // regular iff nontrivial on some norm-one unit
        bool moved = false;
        for (const auto& x : e.residues(1)) {
          if (!e.is_unit(x) || residue(e.norm(x), p, 1) != 1) continue;
          moved |= !(xi(x) == CycScalar(1));
        }
        CHECK(xi.regular() == moved);
        MultChar om = xi.central_character();
        CHECK(om.value_at_p() == CycScalar(1));
        for (long u : {1L, 2L, p + 1, 2 * p - 1, p * 7 + 2}) {
          for (int v = -1; v <= 2; ++v) {
            Rational x = Rational(u) * ppow(p, v);
            if (u % p == 0) continue;
            CHECK(om(x) == CycScalar(e.eta(x)) * xi.on_base(x));
          }
        }
      }
    }
  }
}
