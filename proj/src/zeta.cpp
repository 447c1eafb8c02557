#include "rsz/zeta.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <sstream>

#include "rsz/characters.hpp"

namespace rsz {

namespace {

Rational entry(const Mat2& m, int i, int j) {
  if (i == 0) return j == 0 ? m.a : m.b;
  return j == 0 ? m.c : m.d;
}

int min_val(const Rational& x, const Rational& y, long p) {
  int a = x == 0 ? kInfVal : valuation(x, p);
  int b = y == 0 ? kInfVal : valuation(y, p);
  return std::min(a, b);
}

const Mat2 kFlip = Mat2::diag(-1, 1);

Rational haar_from_additive(const Rational& additive, long p) {
  Rational q(p);
  return additive / ((1 - 1 / q) * (1 - 1 / (q * q)));
}

// Haar measure of {k in G : r k in cell}.
Rational measure_row_in_cell(const OpenCompact& g, const Rational& r1, const Rational& r2, const Cell& cell) {
  const long p = g.prime();
  const Mat2 n = cell.m.inverse();
  std::vector<std::vector<Rational>> rows = g.lie().rows();
  std::vector<Rational> consts(rows.size(), Rational(0));
  for (int j = 0; j < 2; ++j) {
    rows.push_back({r1 * entry(n, 0, j), r1 * entry(n, 1, j), r2 * entry(n, 0, j), r2 * entry(n, 1, j)});
    consts.push_back((r1 - cell.w1) * entry(n, 0, j) + (r2 - cell.w2) * entry(n, 1, j));
  }
  auto sol = solve_affine(rows, consts, 4, p);
  if (!sol) return 0;
  const Rational frac = unit_det_fraction(sol->point, sol->basis, p);
  if (frac == 0) return 0;
  return haar_from_additive(ppow(p, sol->log_measure) * frac, p);
}

// Points of P^1(Z/p^L): (1, y) for y mod p^L, then (p x, 1) for x mod p^{L-1}.
class ProjectiveLine {
 public:
  ProjectiveLine(long p, int level) : p_(p), mod_(ipow(p, level)) {}
  long size() const { return mod_ + mod_ / p_; }
  long modulus() const { return mod_; }
  long index(long a, long b) const {
    a = mod_pos(a, mod_);
    b = mod_pos(b, mod_);
    if (a % p_ != 0) return long((__int128)b * mod_inverse(a, mod_) % mod_);
    const long x = long((__int128)a * mod_inverse(b, mod_) % mod_);
    return mod_ + x / p_;
  }
  std::pair<long, long> row(long idx) const {
    if (idx < mod_) return {1, idx};
    return {p_ * (idx - mod_), 1};
  }

 private:
  long p_;
  long mod_;
};

struct LineOrbit {
  long r1, r2;  // primitive integer row
  long size;    // number of points of P^1(Z/p^L) in the orbit
};

using IntMat = std::array<long, 4>;

// Orbits of G on P^1(Z/p^L), L >= level(G), with every orbit size certified by a volume index.
std::vector<LineOrbit> line_orbits(const OpenCompact& g, int level, long max_index) {
  const long p = g.prime();
  const ProjectiveLine line(p, level);
  if (line.size() > max_index)
    throw IndexBoundExceeded("projective line modulo p^" + std::to_string(level) + " has " +
                             std::to_string(line.size()) + " points, over the bound " + std::to_string(max_index));
  const long mod = line.modulus();
  std::vector<IntMat> basis;
  for (const auto& b : g.lie_basis()) {
    IntMat v{};
    for (int i = 0; i < 4; ++i) v[i] = residue(b[i], p, level);
    basis.push_back(v);
  }
  std::mt19937_64 rng(0x5eed + level);
  std::uniform_int_distribution<long> coef(0, mod - 1);
  std::vector<IntMat> gens;
  auto add_generators = [&](int n) {
    int tries = 0;
    while (n > 0 && tries++ < 1000) {
      IntMat y{1, 0, 0, 1};
      for (const auto& b : basis) {
        long c = coef(rng);
        for (int i = 0; i < 4; ++i) y[i] = long(((__int128)c * b[i] + y[i]) % mod);
      }
      const long det = long(((__int128)y[0] * y[3] - (__int128)y[1] * y[2]) % p);
      if (det == 0) continue;
      gens.push_back(y);
      --n;
    }
  };
  const Rational vol = g.volume();
  add_generators(6);
  for (int round = 0; round < 12; ++round) {
    std::vector<long> comp(size_t(line.size()), -1);
    std::vector<LineOrbit> orbits;
    bool certified = true;
    for (long start = 0; start < line.size() && certified; ++start) {
      if (comp[size_t(start)] >= 0) continue;
      const long id = long(orbits.size());
      std::deque<long> queue{start};
      comp[size_t(start)] = id;
      long count = 0;
      while (!queue.empty()) {
        const long cur = queue.front();
        queue.pop_front();
        ++count;
        const auto [a, b] = line.row(cur);
        for (const auto& y : gens) {
          const long na = long(((__int128)a * y[0] + (__int128)b * y[2]) % mod);
          const long nb = long(((__int128)a * y[1] + (__int128)b * y[3]) % mod);
          const long nxt = line.index(na, nb);
          if (comp[size_t(nxt)] < 0) {
            comp[size_t(nxt)] = id;
            queue.push_back(nxt);
          }
        }
      }
      const auto [a, b] = line.row(start);
      const Rational idx = vol / g.line_stabilizer(a, b, level).volume();
      if (idx.get_den() != 1 || idx.get_num() != count) certified = false;
      orbits.push_back({a, b, count});
    }
    if (certified) return orbits;
    add_generators(6);
  }
  throw DomainError("line orbit enumeration did not certify");
}

// Bottom row (r1, r2) completed to an element of GL2(O).
Mat2 complete_row(const Rational& r1, const Rational& r2, long p) {
  if (valuation(r1, p) == 0) return Mat2{0, -1 / r1, r1, r2};
  return Mat2{1 / r2, 0, r1, r2};
}

// {x : x r in cell} as a coset a + p^e O; nullopt when empty.
std::optional<std::pair<Rational, int>> scalar_preimage(const Cell& cell, const Rational& r1, const Rational& r2,
                                                        long p) {
  const Mat2 n = cell.m.inverse();
  const Rational rr[2] = {r1 * n.a + r2 * n.c, r1 * n.b + r2 * n.d};
  const Rational ss[2] = {cell.w1 * n.a + cell.w2 * n.c, cell.w1 * n.b + cell.w2 * n.d};
  std::optional<std::pair<Rational, int>> cur;
  for (int i = 0; i < 2; ++i) {
    if (rr[i] == 0) {
      if (ss[i] != 0 && valuation(ss[i], p) < 0) return std::nullopt;
      continue;
    }
    std::pair<Rational, int> c{ss[i] / rr[i], -valuation(rr[i], p)};
    if (!cur) {
      cur = c;
      continue;
    }
    const Rational diff = cur->first - c.first;
    const int lo = std::min(cur->second, c.second);
    if (diff != 0 && valuation(diff, p) < lo) return std::nullopt;
    if (c.second > cur->second) cur = c;
  }
  if (!cur) throw DomainError("degenerate cell");
  return cur;
}

// Integral of omega(u) over {u in O^x : p^j u r in cell}, d^x u with vol(O^x) = 1.
CycScalar unit_integral(const Cell& cell, const Rational& r1, const Rational& r2, int j, const MultChar& omega) {
  const long p = omega.p();
  auto pre = scalar_preimage(cell, r1, r2, p);
  if (!pre) return 0;
  const Rational b = pre->first * ppow(p, -j);
  const int e = pre->second - j;
  const int vb = b == 0 ? kInfVal : valuation(b, p);
  const int c = omega.conductor();
  if (e <= 0) return vb >= e && c == 0 ? CycScalar(1) : CycScalar(0);
  if (vb != 0 || c > e) return 0;
  return omega(b) * CycScalar(ppow(p, 1 - e) / (p - 1));
}

LaurentPoly monomial_x(int n) { return LaurentPoly::monomial(n, 1); }

}  // namespace

// ---------------------------------------------------------------- Schwartz functions

bool Cell::contains(const Rational& x, const Rational& y, long p) const {
  const Mat2 n = m.inverse();
  const Rational dx = x - w1, dy = y - w2;
  const Rational u = dx * n.a + dy * n.c, v = dx * n.b + dy * n.d;
  return (u == 0 || valuation(u, p) >= 0) && (v == 0 || valuation(v, p) >= 0);
}

int Cell::floor_valuation(long p) const { return std::min(min_val(w1, w2, p), m.min_valuation(p)); }

int Cell::fine_valuation(long p) const { return -m.inverse().min_valuation(p); }

SchwartzFn SchwartzFn::lattice_indicator(long p, const CycScalar& coeff) {
  SchwartzFn f(p);
  f.add_box(0, 0, 0, 0, coeff);
  return f;
}

void SchwartzFn::add_box(const Rational& a, const Rational& b, int m, int n, const CycScalar& coeff) {
  add_cell({a, b, Mat2::diag(ppow(p_, m), ppow(p_, n)), coeff});
}

void SchwartzFn::add_cell(Cell c) {
  if (c.m.det() == 0) throw DomainError("cell lattice must be invertible");
  if (!c.coeff.is_zero()) cells_.push_back(std::move(c));
}

CycScalar SchwartzFn::operator()(const Rational& x, const Rational& y) const {
  CycScalar r = 0;
  for (const auto& c : cells_)
    if (c.contains(x, y, p_)) r += c.coeff;
  return r;
}

SchwartzFn SchwartzFn::scaled(const CycScalar& c) const {
  SchwartzFn r(p_);
  for (auto cell : cells_) {
    cell.coeff *= c;
    r.add_cell(std::move(cell));
  }
  return r;
}

SchwartzFn SchwartzFn::normalized() const {
  std::vector<Cell> out;
  for (const auto& c : cells_) {
    bool merged = false;
    for (auto& o : out) {
      const Mat2 rel = c.m * o.m.inverse();
      if (!rel.integral(p_) || valuation(rel.det(), p_) != 0) continue;
      if (!o.contains(c.w1, c.w2, p_)) continue;
      o.coeff += c.coeff;
      merged = true;
      break;
    }
    if (!merged) out.push_back(c);
  }
  SchwartzFn r(p_);
  for (auto& c : out) r.add_cell(std::move(c));
  return r;
}

SchwartzFn schwartz_translate(const SchwartzFn& phi, const Mat2& h) {
  if (h.det() == 0) throw DomainError("translate: singular matrix");
  const Mat2 hi = h.inverse();
  SchwartzFn r(phi.prime());
  for (const auto& c : phi.cells()) {
    r.add_cell({c.w1 * hi.a + c.w2 * hi.c, c.w1 * hi.b + c.w2 * hi.d, c.m * hi, c.coeff});
  }
  return r;
}

SchwartzFn center_difference(const SchwartzFn& phi) {
  const long p = phi.prime();
  SchwartzFn r = phi;
  for (const auto& c : phi.cells()) r.add_cell({c.w1 * p, c.w2 * p, Mat2::scalar(p) * c.m, -c.coeff});
  return r;
}

OpenCompact cell_stabilizer(const SchwartzFn& phi) {
  const long p = phi.prime();
  OpenCompact g = OpenCompact::full(p);
  Lattice l = g.lie();
  for (const auto& c : phi.cells()) {
    const Mat2 n = c.m.inverse();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        std::vector<Rational> row(4);
        for (int k = 0; k < 2; ++k)
          for (int m = 0; m < 2; ++m) row[2 * k + m] = entry(c.m, i, k) * entry(n, m, j);
        l.require(row, 0, p);
      }
    const Rational w[2] = {c.w1, c.w2};
    for (int j = 0; j < 2; ++j) {
      std::vector<Rational> row(4);
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m) row[2 * k + m] = w[k] * entry(n, m, j);
      l.require(row, 0, p);
    }
  }
  return OpenCompact(p, l, "stab");
}

// ---------------------------------------------------------------- integral data

namespace {

OpenCompact frame_group(long p, int c1, int c2, const Mat2& b) {
  return OpenCompact::k_level(p, c1).intersect(OpenCompact::k_level(p, c2).conjugate(b));
}

}  // namespace

IntegralDatumReport integral_datum_check(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi) {
  const long p = phi.prime();
  const SchwartzFn norm = phi.normalized();
  const Mat2 g1i = g1.inverse();
  const SchwartzFn moved = schwartz_translate(norm, g1i);
  const OpenCompact u = frame_group(p, conductor(pi.pi1), conductor(pi.pi2), g1i * g2);
  IntegralDatumReport r;
  r.stab_volume = cell_stabilizer(moved).intersect(u).volume();
  r.required_ideal_generator = 1 / r.stab_volume;
  r.is_integral = true;
  for (const auto& c : norm.cells()) {
    auto q = c.coeff.as_rational();
    if (!q) {
      r.is_integral = false;
      r.detail = "coefficient " + c.coeff.str() + " is not rational";
      break;
    }
    const Rational scaled = *q * r.stab_volume;
    if (scaled.get_den() != 1) {
      r.is_integral = false;
      r.detail = "coefficient " + to_string(*q) + " not in " + to_string(r.required_ideal_generator) + " Z";
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------- engine

ZetaEngine::ZetaEngine(PiPair pi, ZetaOptions opts)
    : pi_(std::move(pi)),
      opts_(opts),
      w1_(pi_.pi1),
      w2_(pi_.pi2),
      omega_(w1_.central() * w2_.central()),
      l_(rs_l_factor(pi_)) {
  const long p = pi_.p();
  vol_k_ = OpenCompact::k_level(p, w1_.conductor()).volume() * OpenCompact::k_level(p, w2_.conductor()).volume();
}

ZetaValue ZetaEngine::i_new(const Mat2& g1, const Mat2& g2) const {
  const long p = pi_.p();
  const CosetDatum d1 = decompose(g1, p, c1());
  const CosetDatum d2 = decompose(kFlip * g2, p, c2());
  const CycScalar pref = w1_.central()(d1.z) * w2_.central()(d2.z);
  const int cmax = std::max({c1(), c2(), 1});
  const int j_lo = std::max(-2 * c1() - d1.t, -2 * c2() - d2.t);
  const Rational x = reduce_mod_pe(d1.x + d2.x, p, std::max(0, -j_lo) + cmax);
  const auto key = std::make_tuple(d1.t, d1.k, d1.v, d2.t, d2.k, d2.v, x);
  auto it = inner_cache_.find(key);
  if (it == inner_cache_.end()) {
    const int vx = x == 0 ? kInfVal : valuation(x, p);
    int j_start = std::max({j_lo, 1 - d1.t, 1 - d2.t});
    if (vx != kInfVal) j_start = std::max(j_start, -vx);
    int e = 0;
    for (const auto& f : l_.factors()) e += f.d;
    const int n_max = j_start + e + opts_.guard;
    const long mod = ipow(p, cmax);
    LaurentPoly series;
    for (int j = j_lo; j <= n_max; ++j) {
      if (vx != kInfVal && j + vx < -cmax) continue;
      CycScalar acc = 0;
      for (long u = 1; u < mod; ++u) {
        if (u % p == 0) continue;
        const WhittakerValue a = w1_.at_coset(d1.t + j, d1.k, Rational(d1.v) / u);
        if (!a.in_support || a.value.is_zero()) continue;
        const WhittakerValue b = w2_.at_coset(d2.t + j, d2.k, Rational(d2.v) / u);
        if (!b.in_support || b.value.is_zero()) continue;
        acc += omega_(Rational(u)) * psi(u * ppow(p, j) * x, p) * a.value * b.value;
      }
      if (acc.is_zero()) continue;
      series.add(j, acc * CycScalar(ppow(p, j) / Rational((p - 1) * ipow(p, cmax - 1))));
    }
    const LaurentPoly prod = series * l_.inverse_poly();
    LaurentPoly head;
    for (const auto& [n, c] : prod.coeffs()) {
      if (n > n_max) continue;
      if (n >= j_start + e) {
        std::ostringstream os;
        os << "inner integral tail at (t,k,v) = (" << d1.t << "," << d1.k << "," << d1.v << "), (" << d2.t << ","
           << d2.k << "," << d2.v << ") is not annihilated by 1/L: coefficient of X^" << n << " is " << c.str();
        throw TailNotGeometric(os.str());
      }
      head.set(n, c);
    }
    it = inner_cache_.emplace(key, ZetaValue{l_, head}).first;
  }
  return it->second * LaurentPoly(pref);
}

ZetaValue ZetaEngine::row_integral(const SchwartzFn& phi, const Rational& r1, const Rational& r2) const {
  const long p = pi_.p();
  ZetaValue out;
  if (phi.empty()) return out;
  int j_min = kInfVal, j_fine = -kInfVal;
  for (const auto& c : phi.cells()) {
    j_min = std::min(j_min, c.floor_valuation(p));
    j_fine = std::max(j_fine, c.fine_valuation(p));
  }
  j_fine = std::max(j_fine, j_min);
  const CycScalar w = omega_.value_at_p();
  for (int j = j_min; j < j_fine; ++j) {
    CycScalar acc = 0;
    for (const auto& c : phi.cells()) acc += c.coeff * unit_integral(c, r1, r2, j, omega_);
    if (!acc.is_zero()) out.poly.add(2 * j, acc * w.pow(j));
  }
  const CycScalar at_zero = phi(0, 0);
  if (omega_.conductor() == 0 && !at_zero.is_zero()) {
    ZetaValue tail{LFactorDescriptor({{w, 2}}), LaurentPoly::monomial(2 * j_fine, at_zero * w.pow(j_fine))};
    out = out + tail;
  }
  return out;
}

ZetaValue ZetaEngine::zeta_frame(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const {
  const long p = pi_.p();
  ZetaValue z{l_, {}};
  if (phi.empty()) return z;
  const OpenCompact group = cell_stabilizer(phi)
                                .intersect(OpenCompact::k_level(p, c1()).conjugate(g1))
                                .intersect(OpenCompact::k_level(p, c2()).conjugate(g2));
  const int level = std::max(1, group.level());
  const auto orbits = line_orbits(group, level, opts_.max_index);
  const long total = ipow(p, level) + ipow(p, level - 1);
  for (const auto& o : orbits) {
    const ZetaValue j = row_integral(phi, o.r1, o.r2);
    if (j.poly.is_zero()) continue;
    const Mat2 kappa = complete_row(o.r1, o.r2, p);
    const ZetaValue inner = i_new(kappa * g1, kappa * g2);
    if (inner.poly.is_zero()) continue;
    z = z + product(j, inner) * LaurentPoly(CycScalar(Rational(o.size) / total));
  }
  return z;
}

ZetaValue ZetaEngine::zeta(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const {
  const Mat2 g1i = g1.inverse();
  const ZetaValue z = zeta_frame(schwartz_translate(phi, g1i), Mat2::identity(), g1i * g2);
  return z * monomial_x(-valuation(g1.det(), pi_.p()));
}

ZetaValue ZetaEngine::zeta_direct(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const {
  return zeta_frame(phi, g1, g2);
}

SupportedFunctionOnPGK ZetaEngine::xi_c(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2) const {
  const long p = pi_.p();
  SupportedFunctionOnPGK out;
  out.p = p;
  const Mat2 g1i = g1.inverse();
  const Mat2 b = g1i * g2;
  const SchwartzFn moved = schwartz_translate(phi, g1i);
  if (moved.empty()) return out;
  const SchwartzFn diff = center_difference(moved);
  const OpenCompact u = frame_group(p, c1(), c2(), b);
  const int level = std::max(1, u.level());
  const long mod = ipow(p, level);
  const long units = (p - 1) * ipow(p, level - 1);
  // a generator modulo p^2 generates the units modulo every p^L (p odd)
  const long gen = DlogTable::get(p, std::min(level, 2))->generator();
  int j_min = kInfVal, j_max = -kInfVal;
  for (const auto& c : diff.cells()) j_min = std::min(j_min, c.floor_valuation(p));
  for (const auto& c : moved.cells()) j_max = std::max(j_max, c.fine_valuation(p));
  const auto orbits = line_orbits(u, level, opts_.max_index);
  for (const auto& o : orbits) {
    const Rational idx = u.line_stabilizer(o.r1, o.r2, level).volume() /
                         u.row_stabilizer(o.r1, o.r2, level).volume();
    if (idx.get_den() != 1 || units % idx.get_num().get_si() != 0)
      throw DomainError("row orbit index is not a divisor of the unit group order");
    const long n_scalars = units / idx.get_num().get_si();
    long lam = 1;
    for (long s = 0; s < n_scalars; ++s, lam = long((__int128)lam * gen % mod)) {
      const Rational r1 = Rational(lam * o.r1), r2 = Rational(lam * o.r2);
      const Mat2 kappa = complete_row(r1, r2, p);
      for (int j = j_min; j <= j_max; ++j) {
        const Rational pj = ppow(p, j);
        CycScalar f = 0;
        for (const auto& c : diff.cells()) {
          const Rational m = measure_row_in_cell(u, pj * r1, pj * r2, c);
          if (m != 0) f += c.coeff * CycScalar(m);
        }
        if (f.is_zero()) continue;
        const Mat2 ga = Mat2::scalar(pj) * kappa;
        const Mat2 gb = ga * b;
        out.terms.push_back({ga, gb, decompose(ga, p, c1()), decompose(gb, p, c2()), f});
      }
    }
  }
  return out;
}

ZetaValue ZetaEngine::lambda_term(const Mat2& g1, const Mat2& g2) const {
  const long p = pi_.p();
  const Rational vol_p = volume_p(p_lie_of_conjugates(p, {{g1, c1()}, {g2, c2()}}), p);
  const ZetaValue inner = i_new(g1, g2);
  return inner * LaurentPoly::monomial(valuation(g2.det(), p), CycScalar(vol_k_ / vol_p));
}

ZetaValue ZetaEngine::lambda(const SupportedFunctionOnPGK& f) const {
  ZetaValue out{l_, {}};
  for (const auto& t : f.terms) out = out + lambda_term(t.g1, t.g2) * LaurentPoly(t.value);
  return out;
}

// ---------------------------------------------------------------- free functions

long enumeration_size(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi) {
  const long p = phi.prime();
  const int c1 = conductor(pi.pi1), c2 = conductor(pi.pi2);
  const Mat2 g1i = g1.inverse();
  const Mat2 b = g1i * g2;
  const SchwartzFn moved = schwartz_translate(phi, g1i);
  const OpenCompact z_group = cell_stabilizer(moved)
                                  .intersect(OpenCompact::k_level(p, c1))
                                  .intersect(OpenCompact::k_level(p, c2).conjugate(b));
  const int level = std::max({1, z_group.level(), frame_group(p, c1, c2, b).level()});
  return ipow(p, level) + ipow(p, level - 1);
}

ZetaValue product(const ZetaValue& a, const ZetaValue& b) { return {a.l_part * b.l_part, a.poly * b.poly}; }

ZetaValue i_new(const PiPair& pi, const Mat2& g1, const Mat2& g2) { return ZetaEngine(pi).i_new(g1, g2); }

ZetaValue zeta_unfolded(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                        const ZetaOptions& opts) {
  return ZetaEngine(pi, opts).zeta(phi, g1, g2);
}

SupportedFunctionOnPGK xi_c(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                            const ZetaOptions& opts) {
  return ZetaEngine(pi, opts).xi_c(phi, g1, g2);
}

ZetaValue lambda(const SupportedFunctionOnPGK& f, const PiPair& pi, const ZetaOptions& opts) {
  return ZetaEngine(pi, opts).lambda(f);
}

namespace {

void collect(const CycScalar& x, RingSpec& ring) {
  for (const auto& s : x.symbol_names()) ring.symbols.insert(s);
  if (!x.has_symbols()) ring.constants.push_back(x);
}

std::optional<std::string> lone_symbol(const CycScalar& x) {
  const auto names = x.symbol_names();
  if (names.size() != 1 || !(x == CycScalar::symbol(names[0]))) return std::nullopt;
  return names[0];
}

void collect_rep(const LocalRep& r, RingSpec& ring) {
  if (auto* u = r.as<UnramifiedPS>()) {
    auto a = lone_symbol(u->alpha), b = lone_symbol(u->beta);
    if (a && b) {
      ring.hecke_pairs.push_back({*a, *b});
    } else {
      collect(u->alpha + u->beta, ring);
      collect(u->alpha * u->beta, ring);
    }
  } else if (auto* s = r.as<SteinbergUnr>()) {
    collect(s->chi_p, ring);
  } else if (auto* h = r.as<HalfRamifiedPS>()) {
    collect(h->chi_p, ring);
    collect(h->twist, ring);
  } else if (auto* f = r.as<FullyRamifiedPS>()) {
    collect(f->chi_p, ring);
    collect(f->twist, ring);
  } else if (auto* sr = r.as<SteinbergRam>()) {
    collect(sr->twist, ring);
  } else if (auto* sc = r.as<Supercuspidal>()) {
    collect(sc->twist, ring);
  }
}

}  // namespace

RingSpec theorem_ring(const PiPair& pi) {
  RingSpec ring;
  ring.p = pi.p();
  ring.m = pi.nu() * ipow(pi.p(), pi.tau());
  ring.allow_sqrt = pi.nu() != 1;
  collect_rep(pi.pi1, ring);
  collect_rep(pi.pi2, ring);
  return ring;
}

CertifyResult certify(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi, const RingSpec& ring,
                      const ZetaOptions& opts) {
  CertifyResult r;
  r.datum = integral_datum_check(phi, g1, g2, pi);
  if (!r.datum.is_integral) throw NotIntegralDatum(r.datum);
  const ZetaEngine engine(pi, opts);
  const long p = pi.p();
  r.z = engine.zeta(phi, g1, g2);
  r.lambda_value = engine.lambda(engine.xi_c(phi, g1, g2));
  LaurentPoly factor = LaurentPoly::monomial(valuation(g2.det(), p), CycScalar(engine.vol_k()));
  factor = factor * (LaurentPoly(CycScalar(1)) - LaurentPoly::monomial(2, engine.central().value_at_p()));
  r.identity_check = equivalent(r.lambda_value, r.z * factor);
  r.l_factor = engine.l_factor();
  r.phi_poly = renormalize(r.z, r.l_factor);
  r.all_members = true;
  for (const auto& [n, c] : r.phi_poly.coeffs()) {
    Membership m = membership(c, ring);
    r.all_members &= m.member;
    r.verdicts.push_back({n, std::move(m)});
  }
  return r;
}

CertifyResult certify(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                      const ZetaOptions& opts) {
  return certify(phi, g1, g2, pi, theorem_ring(pi), opts);
}

CycScalar trilinear(const SchwartzFn& phi, const Mat2& g1, const Mat2& g2, const PiPair& pi,
                    const ZetaOptions& opts) {
  // the third representation I(|.|^{-1/2}, |.|^{1/2} nu) needs nu = (omega_1 omega_2)^{-1} != 1
  const MultChar om = central_char(pi.pi1) * central_char(pi.pi2);
  if (om.conductor() == 0 && om.value_at_p().is_one())
    throw DomainError("trilinear form needs a nontrivial product of central characters");
  return certify(phi, g1, g2, pi, opts).phi_poly.eval_at_one();
}

}  // namespace rsz
