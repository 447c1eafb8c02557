#include "rsz/battery.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rsz {

std::string class_kind_name(ClassKind k) {
  switch (k) {
    case ClassKind::Unramified: return "unramified";
    case ClassKind::Steinberg: return "steinberg";
    case ClassKind::HalfRamified: return "half_ramified";
    case ClassKind::Supercuspidal: return "supercuspidal";
  }
  return "?";
}

ClassKind class_kind_from_name(const std::string& s) {
  for (ClassKind k : {ClassKind::Unramified, ClassKind::Steinberg, ClassKind::HalfRamified, ClassKind::Supercuspidal})
    if (class_kind_name(k) == s) return k;
  throw DomainError("unknown class '" + s + "'");
}

std::vector<std::pair<ClassKind, ClassKind>> all_class_pairs() {
  const ClassKind ks[] = {ClassKind::Unramified, ClassKind::Steinberg, ClassKind::HalfRamified,
                          ClassKind::Supercuspidal};
  std::vector<std::pair<ClassKind, ClassKind>> out;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) out.push_back({ks[i], ks[j]});
  return out;
}

Rational BatteryRng::unit(long p, int digits) {
  const long mod = ipow(p, digits);
  for (;;) {
    const long u = uniform(1, mod - 1);
    if (u % p != 0) return Rational(uniform(0, 1) ? u : -u);
  }
}

Rational BatteryRng::padic(long p, int vmin, int vmax) { return unit(p, 3) * ppow(p, int(uniform(vmin, vmax))); }

LocalRep random_formal_rep(ClassKind k, long p, const std::string& tag, BatteryRng& rng) {
  switch (k) {
    case ClassKind::Unramified:
      return LocalRep(p, UnramifiedPS{CycScalar::symbol("a" + tag), CycScalar::symbol("b" + tag)});
    case ClassKind::Steinberg:
      return LocalRep(p, SteinbergUnr{CycScalar::symbol("c" + tag)});
    case ClassKind::HalfRamified: {
      const int c = int(rng.uniform(1, 2));
      const long ord = c == 1 ? p - 1 : p * (p - 1);
      for (;;) {
        const MultChar om(p, c, rng.uniform(1, ord - 1));
        if (om.conductor() == c) return LocalRep(p, HalfRamifiedPS{CycScalar::symbol("h" + tag), om});
      }
    }
    case ClassKind::Supercuspidal: {
      const ExtKind kinds[] = {ExtKind::Inert, ExtKind::Ramified1, ExtKind::Ramified2};
      const QuadExt e(p, kinds[rng.uniform(0, 2)]);
      for (;;) {
        const ECharacter xi = ECharacter::normalized(e, rng.uniform(1, 4 * p * p));
        if (xi.regular()) return LocalRep(p, Supercuspidal{xi, CycScalar::symbol("s" + tag)});
      }
    }
  }
  throw DomainError("unknown class");
}

Json to_json(const Datum& d) {
  auto mat = [](const Mat2& m) {
    Json j = Json::array();
    for (const auto& x : m.entries()) j.push_back(to_string(x));
    return j;
  };
  Json cells = Json::array();
  for (const auto& c : d.phi.cells())
    cells.push_back({{"offset", {to_string(c.w1), to_string(c.w2)}}, {"lattice", mat(c.m)}, {"coeff", to_json(c.coeff)}});
  return {{"phi", cells}, {"g1", mat(d.g1)}, {"g2", mat(d.g2)}};
}

Datum random_integral_datum(const PiPair& pi, BatteryRng& rng, const ZetaOptions& opts,
                            const DatumDistribution& dist) {
  const long p = pi.p();
  for (int attempt = 0; attempt < dist.max_tries; ++attempt) {
    Datum d{SchwartzFn(p), {}, {}};
    const int cells = int(rng.uniform(1, dist.max_cells));
    for (int i = 0; i < cells; ++i) {
      const int m = int(rng.uniform(dist.depth_min, dist.depth_max));
      const int n = int(rng.uniform(dist.depth_min, dist.depth_max));
      const Rational a = rng.uniform(0, 2) == 0 ? Rational(0) : rng.padic(p, dist.center_vmin, dist.center_vmax);
      const Rational b = rng.uniform(0, 2) == 0 ? Rational(0) : rng.padic(p, dist.center_vmin, dist.center_vmax);
      d.phi.add_box(a, b, m, n, 1);
    }
    auto entry = [&] {
      return rng.uniform(0, 3) == 0 ? Rational(0) : rng.padic(p, dist.entry_vmin, dist.entry_vmax);
    };
    d.g1 = {entry(), entry(), entry(), entry()};
    if (rng.uniform(0, 99) < dist.related_percent) {
      // g2 = g1 r with r close to GL2(O); keeps both Whittaker supports overlapping
      auto near = [&] { return rng.uniform(0, 2) == 0 ? Rational(0) : rng.padic(p, dist.near_vmin, dist.near_vmax); };
      const Mat2 r{1 + near(), near(), near(), 1 + near()};
      d.g2 = d.g1 * r;
      bool in_range = true;
      for (const auto& x : d.g2.entries())
        if (x != 0 && (valuation(x, p) < dist.entry_vmin || valuation(x, p) > dist.entry_vmax)) in_range = false;
      if (!in_range) continue;
    } else {
      d.g2 = {entry(), entry(), entry(), entry()};
    }
    if (d.g1.det() == 0 || d.g2.det() == 0) continue;
    if (enumeration_size(d.phi, d.g1, d.g2, pi) > opts.max_index) continue;
    try {
      const Rational vol = integral_datum_check(d.phi, d.g1, d.g2, pi).stab_volume;
      SchwartzFn scaled(p);
      const SchwartzFn norm = d.phi.normalized();
      for (const auto& c : norm.cells()) {
        long k = rng.uniform(1, dist.max_coeff);
        if (rng.uniform(0, 1)) k = -k;
        Cell cell = c;
        cell.coeff = CycScalar(Rational(k) / vol);
        scaled.add_cell(cell);
      }
      d.phi = scaled;
      // the stabilizer can only grow when coefficients differ; recheck
      if (!integral_datum_check(d.phi, d.g1, d.g2, pi).is_integral) continue;
      if (enumeration_size(d.phi, d.g1, d.g2, pi) > opts.max_index) continue;
      return d;
    } catch (const IndexBoundExceeded&) {
      continue;
    }
  }
  throw DomainError("no datum inside the index bound after " + std::to_string(dist.max_tries) + " tries");
}

int BatteryReport::passed() const {
  return int(std::count_if(entries.begin(), entries.end(), [](const BatteryEntry& e) { return e.ok(); }));
}

int BatteryReport::failed() const { return int(entries.size()) - passed(); }

Json BatteryReport::to_json(bool with_entries) const {
  std::map<std::string, std::pair<int, int>> by_pair;
  for (const auto& e : entries) {
    auto& [ok, total] = by_pair[e.pair];
    ok += e.ok();
    ++total;
  }
  Json pairs = Json::object();
  for (const auto& [k, v] : by_pair) pairs[k] = {{"passed", std::to_string(v.first)}, {"total", std::to_string(v.second)}};
  Json out{{"p", std::to_string(p)},   {"seed", std::to_string(seed)},      {"n", std::to_string(n)},
           {"pairs", pairs},           {"passed", std::to_string(passed())}, {"failed", std::to_string(failed())}};
  const auto range = [](int lo, int hi) { return Json{std::to_string(lo), std::to_string(hi)}; };
  out["distribution"] = {{"cells", range(1, dist.max_cells)},
                         {"box_depth", range(dist.depth_min, dist.depth_max)},
                         {"center_valuation", range(dist.center_vmin, dist.center_vmax)},
                         {"entry_valuation", range(dist.entry_vmin, dist.entry_vmax)},
                         {"related_percent", std::to_string(dist.related_percent)},
                         {"near_valuation", range(dist.near_vmin, dist.near_vmax)},
                         {"max_coeff", std::to_string(dist.max_coeff)}};
  Json failures = Json::array();
  for (const auto& e : entries) {
    if (e.ok() && !with_entries) continue;
    Json j{{"key", e.key},
           {"identity_check", e.identity},
           {"renormalized", e.renormalized},
           {"members", e.members},
           {"datum", e.datum}};
    if (!e.error.empty()) j["error"] = e.error;
    failures.push_back(j);
  }
  out[with_entries ? "entries" : "failures"] = failures;
  return out;
}

BatteryReport run_battery(const std::vector<std::pair<ClassKind, ClassKind>>& pairs, const BatteryOptions& opts) {
  BatteryReport rep;
  rep.p = opts.p;
  rep.seed = opts.seed;
  rep.n = opts.n;
  rep.dist = opts.dist;
  for (std::size_t pi_idx = 0; pi_idx < pairs.size(); ++pi_idx) {
    const auto [k1, k2] = pairs[pi_idx];
    const std::string label = class_kind_name(k1) + ":" + class_kind_name(k2);
    for (int i = 0; i < opts.n; ++i) {
      // one stream per (pair, index) so entries do not depend on iteration order
      BatteryRng rng(opts.seed * 1000003ULL + std::uint64_t(int(k1) * 4 + int(k2)) * 100003ULL + std::uint64_t(i));
      BatteryEntry e;
      e.pair = label;
      e.index = i;
      char key[64];
      std::snprintf(key, sizeof key, "%s/%04d", label.c_str(), i);
      e.key = key;
      try {
        const PiPair pi{random_formal_rep(k1, opts.p, "1", rng), random_formal_rep(k2, opts.p, "2", rng)};
        const Datum d = random_integral_datum(pi, rng, opts.zeta, opts.dist);
        e.datum = to_json(d);
        e.datum["rep1"] = rsz::to_json(pi.pi1);
        e.datum["rep2"] = rsz::to_json(pi.pi2);
        if (opts.identity_only) {
          const ZetaEngine engine(pi, opts.zeta);
          const ZetaValue z = engine.zeta(d.phi, d.g1, d.g2);
          const ZetaValue lam = engine.lambda(engine.xi_c(d.phi, d.g1, d.g2));
          LaurentPoly f = LaurentPoly::monomial(valuation(d.g2.det(), opts.p), CycScalar(engine.vol_k()));
          f = f * (LaurentPoly(CycScalar(1)) - LaurentPoly::monomial(2, engine.central().value_at_p()));
          e.identity = equivalent(lam, z * f);
          e.renormalized = e.members = true;
        } else {
          const CertifyResult r = certify(d.phi, d.g1, d.g2, pi, opts.zeta);
          e.identity = r.identity_check;
          e.renormalized = true;
          e.members = r.all_members;
          for (const auto& [deg, m] : r.verdicts)
            if (!m.member) e.error = "X^" + std::to_string(deg) + ": " + m.certificate;
        }
      } catch (const PoleMismatch& ex) {
        e.error = std::string("pole mismatch: ") + ex.what();
      } catch (const std::exception& ex) {
        e.error = ex.what();
      }
      rep.entries.push_back(std::move(e));
    }
  }
  std::sort(rep.entries.begin(), rep.entries.end(),
            [](const BatteryEntry& a, const BatteryEntry& b) { return a.key < b.key; });
  return rep;
}

}  // namespace rsz
