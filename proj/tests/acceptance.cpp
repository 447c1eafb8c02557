// Acceptance runner: one PASS/FAIL line per criterion. Arguments select criteria by number.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rsz/battery.hpp"
#include "rsz/sums.hpp"
#include "rsz/whittaker.hpp"
#include "rsz/zeta.hpp"

using namespace rsz;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<MultChar> characters_of_conductor(long p, int c) {
  std::vector<MultChar> out;
  const long ord = c == 0 ? 1 : ipow(p, c - 1) * (p - 1);
  for (long e = 0; e < ord; ++e) {
    MultChar chi(p, c, e);
    if (chi.conductor() == c) out.push_back(chi);
  }
  return out;
}

std::vector<long> units_mod(long p, int digits) {
  std::vector<long> out;
  for (long u = 1; u < ipow(p, digits); ++u)
    if (u % p != 0) out.push_back(u);
  return out;
}

LaurentPoly series(const ZetaValue& z, int n) {
  if (z.poly.is_zero()) return {};
  return (z.poly * series_expand(z.l_part, n - z.poly.min_degree())).truncate(n);
}

Outcome gauss_tables() {
  int cases = 0, bad = 0;
  for (long p : {3L, 5L})
    for (int c = 0; c <= 2; ++c)
      for (const MultChar& chi : characters_of_conductor(p, c))
        for (int v = -4; v <= 2; ++v)
          for (long u : units_mod(p, p == 3 ? 3 : 2)) {
            const Rational x = Rational(u) * ppow(p, v);
            ++cases;
            bad += gauss_closed(chi, x) != gauss_brute(chi, x);
          }
  const bool constant_ok = gauss_closed(MultChar::trivial(3), Rational(1, 3)) == CycScalar(Rational(-1, 2)) &&
                           gauss_brute(MultChar::trivial(3), Rational(1, 3)) == CycScalar(Rational(-1, 2));
  return {bad == 0 && constant_ok,
          fmt("%d (chi, x) cases, %d disagreements; c=0, v(x)=-1 entry -1/(q-1) from direct summation", cases, bad)};
}

Outcome partial_gauss_tables() {
  const long p = 3;
  int cases = 0, bad = 0, zeros = 0;
  for (int c = 1; c <= 2; ++c)
    for (const MultChar& chi : characters_of_conductor(p, c))
      for (int l = 1; l <= 3; ++l)
        for (int a = -4; a <= 1; ++a)
          for (long u : units_mod(p, std::max(1, -a))) {
            const Rational x = Rational(u) * ppow(p, a);
            const CycScalar closed = partial_gauss_closed(chi, l, x);
            ++cases;
            zeros += closed.is_zero();
            bad += closed != partial_gauss_brute(chi, l, x);
          }
  return {bad == 0, fmt("%d cases (%d in the vanishing region), %d disagreements", cases, zeros, bad)};
}

Outcome new_vector_normalization() {
  const long p = 3;
  std::vector<LocalRep> reps{
      LocalRep(p, UnramifiedPS{CycScalar::zeta(8, 1), CycScalar::zeta(8, 3)}),
      LocalRep(p, SteinbergUnr{CycScalar(1)}),
      LocalRep(p, SteinbergUnr{CycScalar(-1)}),
      LocalRep(p, HalfRamifiedPS{CycScalar::zeta(5, 1), MultChar(p, 1, 1)}),
      LocalRep(p, HalfRamifiedPS{CycScalar::zeta(5, 2), MultChar(p, 2, 1)}),
  };
  for (ExtKind k : {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2})
    for (long x = 1;; ++x) {
      const ECharacter xi = ECharacter::normalized(QuadExt(p, k), x);
      if (xi.regular() && xi.conductor() == 1) {
        reps.emplace_back(p, Supercuspidal{xi, CycScalar(1)});
        break;
      }
    }
  int bad = 0;
  for (const auto& r : reps) bad += eval_general(r, Mat2::identity()) != CycScalar(1);
  return {bad == 0, fmt("%d representations, %d not normalized", int(reps.size()), bad)};
}

Outcome conjugate_new_vector() {
  int reps = 0, points = 0, bad = 0;
  std::string first;
  for (long p : {3L, 5L})
    for (int c = 1; c <= 2; ++c)
      for (const MultChar& om : characters_of_conductor(p, c)) {
        const LocalRep h(p, HalfRamifiedPS{CycScalar::zeta(7, 2), om});
        const ConjNewReport r = conj_new_check(h, -6, 2);
        ++reps;
        points += r.checked;
        if (!r.ok) {
          ++bad;
          if (first.empty()) first = "; " + r.first_failure;
        }
      }
  return {bad == 0 && points > 0,
          fmt("%d half-ramified representations, %d grid points, %d failures%s", reps, points, bad, first.c_str())};
}

Outcome unramified_identity() {
  const long p = 3;
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> exp(0, 23);
  int literal = 0, full_l = 0, inner = 0;
  const int n = 10;
  for (int i = 0; i < n; ++i) {
    const PiPair pi{LocalRep(p, UnramifiedPS{CycScalar::zeta(24, exp(rng)), CycScalar::zeta(24, exp(rng))}),
                    LocalRep(p, UnramifiedPS{CycScalar::zeta(24, exp(rng)), CycScalar::zeta(24, exp(rng))})};
    const ZetaEngine engine(pi);
    const LFactorDescriptor l_omega({{engine.central().value_at_p(), 2}});
    const LaurentPoly target = (series_expand(rs_l_factor(pi), 12) * l_omega.inverse_poly()).truncate(12);
    const LaurentPoly z = series(engine.zeta(SchwartzFn::lattice_indicator(p), {}, {}), 12);
    literal += z == target;
    full_l += z == series_expand(rs_l_factor(pi), 12);
    inner += series(engine.i_new({}, {}), 12) == target;
  }
  return {literal == n,
          fmt("Z(ch(O^2)) = L(Pi,s)/L(omega,2s) to X^12 on %d/%d pairs; Z = L(Pi,s) on %d/%d; the y-integral at the "
              "identity equals L(Pi,s)/L(omega,2s) on %d/%d",
              literal, n, full_l, n, inner, n)};
}

std::string battery_summary(const BatteryReport& r) {
  std::ostringstream os;
  os << r.passed() << "/" << r.entries.size() << " at p=" << r.p << " (seed " << r.seed << ", " << r.n << " per pair)";
  int shown = 0;
  for (const auto& e : r.entries)
    if (!e.ok() && shown++ < 3) os << "; " << e.key << ": " << (e.error.empty() ? "identity/membership" : e.error);
  return os.str();
}

Outcome master_identity() {
  BatteryOptions opts;
  opts.n = 20;
  opts.seed = 6;
  opts.identity_only = true;
  const BatteryReport r = run_battery(all_class_pairs(), opts);
  return {r.failed() == 0 && r.entries.size() == 200, battery_summary(r)};
}

Outcome main_theorem_battery() {
  BatteryOptions opts;
  opts.n = 100;
  opts.seed = 7;
  const BatteryReport r3 = run_battery(all_class_pairs(), opts);
  opts.p = 5;
  opts.n = 10;
  const BatteryReport r5 = run_battery(all_class_pairs(), opts);
  return {r3.failed() == 0 && r5.failed() == 0 && r3.entries.size() == 1000 && r5.entries.size() == 100,
          battery_summary(r3) + "; " + battery_summary(r5)};
}

Outcome inverse_l_membership() {
  int checked = 0, bad = 0;
  std::string first;
  for (long p : {3L, 5L})
    for (const auto& [k1, k2] : all_class_pairs())
      for (int i = 0; i < 5; ++i) {
        BatteryRng rng(std::uint64_t(p * 1000 + int(k1) * 40 + int(k2) * 10 + i));
        const PiPair pi{random_formal_rep(k1, p, "1", rng), random_formal_rep(k2, p, "2", rng)};
        const Membership m = membership(rs_l_factor(pi).inverse_poly(), theorem_ring(pi));
        ++checked;
        if (!m.member) {
          ++bad;
          if (first.empty()) first = "; " + m.certificate;
        }
      }
  return {bad == 0, fmt("%d pairs (all 10 classes, p = 3, 5), %d failures%s", checked, bad, first.c_str())};
}

Outcome volume_indices() {
  std::ostringstream os;
  bool ok = true;
  for (long p : {3L, 5L}) {
    const long k1 = long(enumerate_quotient(OpenCompact::full(p), OpenCompact::k_level(p, 1)).size());
    // P(O) = {[[a, b], [0, 1]]}; the subgroup a = 1, b = 0 mod p, counted modulo p^2
    long all = 0, sub = 0;
    for (long a = 0; a < p * p; ++a)
      for (long b = 0; b < p * p; ++b) {
        if (a % p == 0) continue;
        ++all;
        sub += a % p == 1 && b % p == 0;
      }
    Lattice lie(2);
    lie.require_coordinate(0, 1, p);
    lie.require_coordinate(1, 1, p);
    const Rational vol = volume_p(lie, p);
    const bool here = k1 == p * p - 1 && all / sub == (p - 1) * p && all % sub == 0 && vol == Rational(1) / ((p - 1) * p);
    ok = ok && here;
    os << "p=" << p << ": [GL2(O):K_1]=" << k1 << ", P(O)-index " << all / sub << " (volume " << to_string(vol) << ")" << (p == 3 ? "; " : "");
  }
  return {ok, os.str()};
}

Outcome trilinear_membership() {
  const long p = 3;
  const auto pairs = all_class_pairs();
  int done = 0, bad = 0;
  std::string first;
  for (int i = 0; done < 20; ++i) {
    const auto [k1, k2] = pairs[std::size_t(i) % pairs.size()];
    BatteryRng rng(std::uint64_t(900 + i));
    const PiPair pi{random_formal_rep(k1, p, "1", rng), random_formal_rep(k2, p, "2", rng)};
    const MultChar om = central_char(pi.pi1) * central_char(pi.pi2);
    if (om.conductor() == 0 && om.value_at_p().is_one()) continue;
    const Datum d = random_integral_datum(pi, rng, {});
    const Membership m = membership(trilinear(d.phi, d.g1, d.g2, pi), theorem_ring(pi));
    ++done;
    if (!m.member) {
      ++bad;
      if (first.empty()) first = "; " + m.certificate;
    }
  }
  return {bad == 0, fmt("%d integral data over all class pairs at p=3, %d outside A%s", done, bad, first.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"gauss-sum table equivalence", gauss_tables},
      {"partial-gauss-sum table equivalence", partial_gauss_tables},
      {"new-vector normalization", new_vector_normalization},
      {"conjugate new-vector relation", conjugate_new_vector},
      {"classical unramified identity", unramified_identity},
      {"master identity", master_identity},
      {"main theorem battery", main_theorem_battery},
      {"inverse-L membership", inverse_l_membership},
      {"volume-index regressions", volume_indices},
      {"trilinear membership", trilinear_membership},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = int(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << criteria[i].first << ": " << o.detail
              << fmt("  [%.1f s]", secs) << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
