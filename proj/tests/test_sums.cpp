#include <doctest.h>

#include <vector>

#include "numeric.hpp"
#include "rsz/sums.hpp"

using namespace rsz;
using rsz::testing::cd;
using rsz::testing::numeric;

namespace {

// Every character of exact conductor c (value 1 at p).
std::vector<MultChar> characters_of_conductor(long p, int c) {
  std::vector<MultChar> out;
  const long ord = c == 0 ? 1 : ipow(p, c - 1) * (p - 1);
  for (long e = 0; e < ord; ++e) {
    MultChar chi(p, c, e);
    if (chi.conductor() == c) out.push_back(chi);
  }
  return out;
}

// Floating point Gauss sum over units mod p^m, independent of the exact builder.
cd gauss_numeric(const MultChar& chi, const Rational& x, int m) {
  const long p = chi.p(), mod = ipow(p, m);
  cd acc = 0;
  long count = 0;
  for (long u = 1; u < mod; ++u) {
    if (u % p == 0) continue;
    ++count;
    const double ang_chi = chi.conductor() == 0
                               ? 0.0
                               : double(chi.unit_log_residue(u)) / double(chi.unit_order());
    const auto [n, k] = psi_root(x * u, p);
    acc += std::polar(1.0, 2 * M_PI * (ang_chi + double(k) / double(n)));
  }
  return acc / double(count);
}

std::vector<Rational> sample_points(long p, int v) {
  std::vector<Rational> out;
  for (long u : {1L, 2L, p - 1, p + 1, 2 * p + 1, p * p - 2}) {
    if (u % p == 0) continue;
    out.push_back(Rational(u) * ppow(p, v));
  }
  return out;
}

}  // namespace

TEST_CASE("gauss sum examples") {
  const MultChar triv = MultChar::trivial(3);
  CHECK(gauss_brute(triv, Rational(5)) == CycScalar(1));
  CHECK(gauss_closed(triv, Rational(5)) == CycScalar(1));
  CHECK(gauss_brute(triv, Rational(1, 3)) == CycScalar(Rational(-1, 2)));
  CHECK(gauss_closed(triv, Rational(1, 3)) == CycScalar(Rational(-1, 2)));
  CHECK(gauss_closed(triv, Rational(1, 3), GaussConvention::Printed) == CycScalar(Rational(-3, 2)));
  CHECK(gauss_brute(triv, Rational(1, 9)).is_zero());

  const MultChar quad(3, 1, 1);
  const Rational x(2, 3);
  const CycScalar expect = CycScalar(Rational(3, 2)) * CycScalar::sqrt_q(3) * CycScalar(Rational(1, 3)) *
                           epsilon_gl1(quad.inverse()).at_half() * quad.inverse()(x);
  CHECK(gauss_brute(quad, x) == expect);
  CHECK(gauss_closed(quad, Rational(1, 9)).is_zero());
  CHECK(gauss_brute(quad, Rational(1, 9)).is_zero());
}

TEST_CASE("closed and brute gauss sums agree") {
  for (long p : {3L, 5L}) {
    for (int c = 0; c <= 2; ++c) {
      for (const MultChar& chi : characters_of_conductor(p, c)) {
        for (int v = -4; v <= 2; ++v) {
          for (const Rational& x : sample_points(p, v)) {
            INFO("p=", p, " chi=", chi.str(), " x=", x.get_str());
            CHECK(gauss_closed(chi, x) == gauss_brute(chi, x));
          }
        }
      }
    }
  }
}

TEST_CASE("closed and brute partial gauss sums agree") {
  for (long p : {3L, 5L}) {
    for (int c = 0; c <= (p == 3 ? 4 : 3); ++c) {
      const auto chars = characters_of_conductor(p, c);
      for (size_t i = 0; i < chars.size(); i += (p == 3 ? 1 : 3)) {
        const MultChar& chi = chars[i];
        for (int l = 1; l <= 3; ++l) {
          for (int v = -c - 1; v <= 2; ++v) {
            for (long u = 1; u < ipow(p, std::max(c / 2, 1)) + 1; ++u) {
              if (u % p == 0) continue;
              const Rational x = Rational(u) * ppow(p, v);
              INFO("p=", p, " chi=", chi.str(), " l=", l, " x=", x.get_str());
              CHECK(partial_gauss_closed(chi, l, x) == partial_gauss_brute(chi, l, x));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("partial gauss support sits over -b_chi") {
  const long p = 3;
  for (const MultChar& chi : characters_of_conductor(p, 2)) {
    const long b = b_chi(chi);
    for (long u = 1; u < 9; ++u) {
      if (u % 3 == 0) continue;
      const bool hit = mod_pos(u + b, 3) == 0;
      CHECK(partial_gauss_brute(chi, 1, Rational(u, 9)).is_zero() == !hit);
    }
  }
}

TEST_CASE("brute sums are level stable") {
  for (long p : {3L, 5L}) {
    for (int c = 0; c <= 2; ++c) {
      for (const MultChar& chi : characters_of_conductor(p, c)) {
        for (int v = -3; v <= 0; ++v) {
          const Rational x = Rational(p + 2) * ppow(p, v);
          const int m = std::max({c, -v, 1});
          const cd exact = numeric(gauss_brute(chi, x));
          CHECK(std::abs(exact - gauss_numeric(chi, x, m + 1)) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("gl1 epsilon factors") {
  CHECK(epsilon_gl1(MultChar::trivial(3)).constant == CycScalar(1));
  CHECK(epsilon_gl1(MultChar::trivial(3)).x_power == 0);
  const MultChar quad(3, 1, 1);
  const GL1Epsilon eq = epsilon_gl1(quad);
  CHECK(eq.x_power == 1);
  // chi^{-1} = chi; sum_u chi(u) zeta_3^u = zeta_3 - zeta_3^2 = sqrt(-3)
  CHECK(eq.constant == CycScalar::zeta(3, 1) - CycScalar::zeta(3, 2));
  for (long p : {3L, 5L}) {
    for (int c = 1; c <= 2; ++c) {
      for (const MultChar& chi : characters_of_conductor(p, c)) {
        const CycScalar e = epsilon_gl1(chi).at_half();
        const CycScalar ei = epsilon_gl1(chi.inverse()).at_half();
        CHECK(e * e.conj() == CycScalar(1));
        CHECK(e * ei * chi(Rational(-1)) == CycScalar(1));
      }
    }
  }
}

TEST_CASE("quadratic extension constants") {
  CHECK(gamma_const(QuadExt(3, ExtKind::Inert)) == CycScalar(1));
  for (long p : {3L, 5L, 7L}) {
    for (ExtKind k : {ExtKind::Ramified1, ExtKind::Ramified2}) {
      const CycScalar g = gamma_const(QuadExt(p, k));
      CHECK(g * g.conj() == CycScalar(1));
      // gamma^4 = eta(-1)^2 style sign: recorded value is 1 for every ramified E here
      CHECK(g.pow(4) == CycScalar(1));
    }
  }
}

TEST_CASE("E epsilon factors are unitary for regular characters") {
  for (long p : {3L, 5L}) {
    for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2}) {
      const QuadExt E(p, k);
      const long ord = E.residue_size() - 1;
      for (long e = 1; e < ord; ++e) {
        const ECharacter xi = ECharacter::normalized(E, e);
        if (!xi.regular()) continue;
        const CycScalar eps = epsilon_half_e(xi);
        INFO(xi.str());
        CHECK(eps * eps.conj() == CycScalar(1));
      }
    }
  }
}

TEST_CASE("K functions") {
  for (long p : {3L, 5L}) {
    const QuadExt inert(p, ExtKind::Inert);
    const QuadExt ram(p, ExtKind::Ramified1);
    const ECharacter ti(inert, 0, CycScalar(1));
    const ECharacter tr(ram, 0, CycScalar(1));
    const Rational q(p);
    CHECK(k_sum(ti, {0, 0}, 0) == CycScalar(1 - 1 / (q * q)));
    CHECK(k_sum(tr, {0, 0}, 0) == CycScalar::sqrt_q(p) * CycScalar(1 / q) * CycScalar(1 - 1 / q));
  }
  // refinement consistency
  for (long p : {3L, 5L}) {
    for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2}) {
      const QuadExt E(p, k);
      const ECharacter xi = ECharacter::normalized(E, 1);
      const std::vector<std::pair<EElt, Rational>> args = {
          {{0, 0}, 0},
          {E.pow(E.uniformizer(), -1), Rational(1)},
          {E.pow(E.uniformizer(), -2), Rational(2, p)},
          {{Rational(1), Rational(1)}, Rational(1, p * p)},
      };
      for (const auto& [a, b] : args) {
        const int m = k_sum_level(xi, a, b);
        CHECK(k_sum(xi, a, b, m) == k_sum(xi, a, b, m + 1));
      }
    }
  }
}

TEST_CASE("split K function") {
  const long p = 3;
  const MultChar triv = MultChar::trivial(p);
  CHECK(k_split(triv, triv, 0, 0, Rational(1), 0) == CycScalar(1));
  const auto c1 = characters_of_conductor(p, 1);
  const auto c2 = characters_of_conductor(p, 2);
  for (const MultChar& x : c1) {
    for (const MultChar& y : c2) {
      for (int a : {0, -1}) {
        // v p^{-a} integral: the cross term drops out
        const CycScalar lhs = k_split(x, y, 1, 2, Rational(2), a);
        CHECK(lhs == gauss_brute(x, ppow(p, -1)) * gauss_brute(y, ppow(p, -2)));
      }
      CHECK(k_split(x, y, 1, 2, Rational(1), 1) == k_split(y, x, 2, 1, Rational(1), 1));
      CHECK(k_split(x, y, 0, 1, Rational(2), 2) == k_split(y, x, 1, 0, Rational(2), 2));
    }
  }
}

TEST_CASE("S function") {
  CHECK(s_sum(3, 0, 0, 1) == CycScalar(1));
  CHECK(s_sum(3, 1, 0, 1) == CycScalar(Rational(-1, 2)));
  for (long p : {3L, 5L}) {
    for (int m = 1; m <= 3; ++m) {
      for (long a = -2; a <= 2; ++a) {
        for (long b = -2; b <= 2; ++b) {
          CHECK(s_sum(p, a, b, m).conj() == s_sum(p, -a, -b, m));
        }
      }
    }
  }
}
