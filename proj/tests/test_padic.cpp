#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "rsz/padic.hpp"

using namespace rsz;

using rsz::testing::random_k;
using rsz::testing::random_matrix;

TEST_CASE("decomposition reconstructs 500 random matrices exactly") {
  std::mt19937 rng(2024);
  int count = 0;
  for (long p : {3L, 5L}) {
    for (int c = 0; c <= 2; ++c) {
      for (int i = 0; i < 84; ++i, ++count) {
        Mat2 g = random_matrix(rng, p);
        CosetDatum d = decompose(g, p, c);
        CHECK(in_k(d.kappa, p, c));
        CHECK(reconstruct(d, p) == g);
        CHECK(d.k >= 0);
        CHECK(d.k <= c);
        CHECK(d.v % p != 0);
      }
    }
  }
  CHECK(count >= 500);
}

TEST_CASE("coset labels are invariant under right K_c translation") {
  std::mt19937 rng(99);
  for (long p : {3L, 5L}) {
    for (int c = 0; c <= 2; ++c) {
      for (int i = 0; i < 30; ++i) {
        Mat2 g = random_matrix(rng, p);
        CosetDatum a = decompose(g, p, c);
        CosetDatum b = decompose(g * random_k(rng, p, c), p, c);
        CHECK(a.t == b.t);
        CHECK(a.k == b.k);
        int m = std::min(a.k, c - a.k);
        CHECK(mod_pos(a.v - b.v, ipow(p, m)) == 0);
      }
    }
  }
}

TEST_CASE("identity lands at the deepest coset for positive level") {
  for (long p : {3L, 5L}) {
    CosetDatum d0 = decompose(Mat2::identity(), p, 0);
    CHECK(d0.t == 0);
    for (int c = 1; c <= 3; ++c) {
      CosetDatum d = decompose(Mat2::identity(), p, c);
      CHECK(d.k == c);
      CHECK(d.t == -2 * c);
    }
  }
}

TEST_CASE("volumes of congruence subgroups") {
  CHECK(OpenCompact::k_level(3, 1).volume() == Rational(1, 8));
  CHECK(OpenCompact::k_level(3, 1).volume_by_count() == Rational(1, 8));
  CHECK(OpenCompact::k_level(5, 1).volume() == Rational(1, 24));
  CHECK(OpenCompact::k_level(3, 2).volume() == Rational(1, 72));
  CHECK(enumerate_quotient(OpenCompact::full(3), OpenCompact::k_level(3, 2)).size() == 72);
  CHECK(enumerate_quotient(OpenCompact::full(3), OpenCompact::k_level(3, 1)).size() == 8);
}

TEST_CASE("lattice volume agrees with residue counting on conjugated groups") {
  std::mt19937 rng(5);
  for (int i = 0; i < 12; ++i) {
    long p = i % 2 ? 3 : 5;
    int c = 1 + i % 2;
    Mat2 a{1, Rational(i % 3), Rational(p) * (i % 2), 1};
    a = a * Mat2::diag(1, ppow(p, i % 2));
    OpenCompact u = OpenCompact::k_level(p, c).conjugate(a).intersect(OpenCompact::k_level(p, 1));
    if (u.level() > 2) continue;
    CHECK(u.volume() == u.volume_by_count());
  }
}

TEST_CASE("P(O) index of the principal congruence subgroup of the mirabolic") {
  for (long p : {3L, 5L}) {
    Lattice l(2);
    l.require_coordinate(0, 1, p);
    l.require_coordinate(1, 1, p);
    CHECK(1 / volume_p(l, p) == Rational((p - 1) * p));
    // P cap K_1 has full volume in P(O)
    CHECK(volume_p(p_lie_of_conjugates(p, {{Mat2::identity(), 1}}), p) == 1);
  }
}
