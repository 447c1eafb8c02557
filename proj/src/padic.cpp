#include "rsz/padic.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace rsz {

// ---------------------------------------------------------------- Mat2

Mat2 Mat2::inverse() const {
  Rational dt = det();
  if (dt == 0) throw DomainError("singular matrix");
  return {d / dt, -b / dt, -c / dt, a / dt};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

int Mat2::min_valuation(long p) const {
  int m = kInfVal;
  for (const auto& e : entries()) m = std::min(m, valuation(e, p));
  return m;
}

std::string Mat2::str() const {
  std::ostringstream os;
  os << "[[" << a.get_str() << ", " << b.get_str() << "], [" << c.get_str() << ", " << d.get_str() << "]]";
  return os.str();
}

Mat2 g_tkv(long p, int t, int k, const Rational& v) {
  return {0, ppow(p, t), -1, -v * ppow(p, -k)};
}

bool in_k(const Mat2& g, long p, int c) {
  if (!g.integral(p) || valuation(g.det(), p) != 0) return false;
  if (c == 0) return true;
  return valuation(g.c, p) >= c && valuation(g.d - 1, p) >= c;
}

// ---------------------------------------------------------------- lattices

namespace {

struct Diagonalized {
  std::vector<Rational> s;               // diagonal entries (0 when rank drops)
  std::vector<std::vector<Rational>> q;  // column transform, q[row][col]
  std::vector<std::vector<Rational>> rr; // row transform applied to an extra vector
};

// R A Q = diag with R, Q unimodular over Z_p. Also applies R to `rhs`.
Diagonalized diagonalize(std::vector<std::vector<Rational>> a, int n, long p,
                         std::vector<Rational>* rhs = nullptr) {
  size_t m = a.size();
  std::vector<std::vector<Rational>> q(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) q[i][i] = 1;
  std::vector<Rational> s(n);
  for (int k = 0; k < n; ++k) {
    int best = kInfVal;
    size_t bi = 0;
    int bj = 0;
    for (size_t i = k; i < m; ++i)
      for (int j = k; j < n; ++j)
        if (a[i][j] != 0) {
          int v = valuation(a[i][j], p);
          if (v < best) best = v, bi = i, bj = j;
        }
    if (best == kInfVal) break;
    std::swap(a[bi], a[k]);
    if (rhs) std::swap((*rhs)[bi], (*rhs)[k]);
    for (auto& row : a) std::swap(row[bj], row[k]);
    for (auto& row : q) std::swap(row[bj], row[k]);
    const Rational piv = a[k][k];
    for (size_t i = 0; i < m; ++i) {
      if (i == size_t(k) || a[i][k] == 0) continue;
      if (i < size_t(k)) continue;
      Rational f = a[i][k] / piv;
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      if (rhs) (*rhs)[i] -= f * (*rhs)[k];
    }
    for (int j = k + 1; j < n; ++j) {
      if (a[k][j] == 0) continue;
      Rational f = a[k][j] / piv;
      for (size_t i = 0; i < m; ++i) a[i][j] -= f * a[i][k];
      for (int i = 0; i < n; ++i) q[i][j] -= f * q[i][k];
    }
    s[k] = piv;
  }
  return {s, q, {}};
}

}  // namespace

void Lattice::require(std::vector<Rational> row, int e, long p) {
  if (int(row.size()) != n_) throw DomainError("condition has wrong length");
  Rational f = ppow(p, -e);
  bool nonzero = false;
  for (auto& x : row) {
    x *= f;
    nonzero |= x != 0;
  }
  if (nonzero) rows_.push_back(std::move(row));
}

void Lattice::require_coordinate(int i, int e, long p) {
  std::vector<Rational> row(n_);
  row[i] = 1;
  require(std::move(row), e, p);
}

Lattice Lattice::intersect(const Lattice& o) const {
  if (o.n_ != n_) throw DomainError("dimension mismatch");
  Lattice r = *this;
  r.rows_.insert(r.rows_.end(), o.rows_.begin(), o.rows_.end());
  return r;
}

Lattice::Shape Lattice::shape(long p) const {
  auto dg = diagonalize(rows_, n_, p);
  Shape sh;
  sh.basis.assign(n_, std::vector<Rational>(n_));
  for (int k = 0; k < n_; ++k) {
    if (dg.s[k] == 0) throw DomainError("lattice conditions do not bound the lattice");
    int v = valuation(dg.s[k], p);
    sh.log_measure += v;
    Rational scale = ppow(p, -v);
    for (int i = 0; i < n_; ++i) sh.basis[k][i] = dg.q[i][k] * scale;
  }
  return sh;
}

bool Lattice::contains(const std::vector<Rational>& z, long p) const {
  for (const auto& r : rows_) {
    Rational acc = 0;
    for (int i = 0; i < n_; ++i) acc += r[i] * z[i];
    if (acc != 0 && valuation(acc, p) < 0) return false;
  }
  return true;
}

std::optional<AffineLattice> solve_affine(const std::vector<std::vector<Rational>>& rows,
                                          const std::vector<Rational>& consts, int dim, long p) {
  std::vector<Rational> rhs = consts;
  auto dg = diagonalize(rows, dim, p, &rhs);
  for (size_t i = dim; i < rows.size(); ++i)
    if (rhs[i] != 0 && valuation(rhs[i], p) < 0) return std::nullopt;
  AffineLattice out;
  std::vector<Rational> zp(dim);
  out.basis.assign(dim, std::vector<Rational>(dim));
  for (int k = 0; k < dim; ++k) {
    if (dg.s[k] == 0) throw DomainError("affine conditions do not bound the solution set");
    zp[k] = -rhs[k] / dg.s[k];
    out.log_measure += valuation(dg.s[k], p);
    for (int i = 0; i < dim; ++i) out.basis[k][i] = dg.q[i][k] / dg.s[k];
  }
  out.point.assign(dim, Rational(0));
  for (int i = 0; i < dim; ++i)
    for (int k = 0; k < dim; ++k) out.point[i] += dg.q[i][k] * zp[k];
  return out;
}

// ---------------------------------------------------------------- decomposition

namespace {

std::optional<CosetDatum> try_decompose(const Mat2& g, long p, int c, int t, int k, long v) {
  const Rational dl = g.det();
  const Rational w = Rational(v) * ppow(p, -k);
  const Rational pt = ppow(p, t);
  const Rational a1 = -pt * g.c * g.d / dl - w, b1 = pt * g.c * g.c / dl;
  const Rational a2 = -pt * g.d * g.d / dl, b2 = pt * g.c * g.d / dl - w;
  const Rational pc = ppow(p, c);
  const Rational beta0 = c >= 1 ? 1 : 0;
  // kappa11, kappa12 = beta0 (b1, b2) + M (a', b'), M = p^c [[a1, b1], [a2, b2]]
  std::vector<std::vector<Rational>> m = {{pc * a1, pc * b1}, {pc * a2, pc * b2}};
  std::vector<Rational> r = {beta0 * b1, beta0 * b2};
  auto dg = diagonalize(m, 2, p, &r);
  std::vector<Rational> w0(2);
  std::vector<int> e(2, 0);
  for (int i = 0; i < 2; ++i) {
    if (dg.s[i] == 0) {
      if (r[i] != 0 && valuation(r[i], p) < 0) return std::nullopt;
      continue;
    }
    int vs = valuation(dg.s[i], p);
    if (vs >= 0) {
      if (r[i] != 0 && valuation(r[i], p) < 0) return std::nullopt;
      continue;
    }
    Rational sol = -r[i] / dg.s[i];
    if (sol != 0 && valuation(sol, p) < 0) return std::nullopt;
    e[i] = -vs;
    w0[i] = Rational(residue(sol, p, e[i]));
  }
  for (long i = 0; i < p; ++i) {
    for (long j = 0; j < p; ++j) {
      Rational wv0 = w0[0] + Rational(i) * ppow(p, e[0]);
      Rational wv1 = w0[1] + Rational(j) * ppow(p, e[1]);
      Rational ya = dg.q[0][0] * wv0 + dg.q[0][1] * wv1;
      Rational yb = dg.q[1][0] * wv0 + dg.q[1][1] * wv1;
      Rational alpha = pc * ya, beta = beta0 + pc * yb;
      Rational u = pt * (g.d * alpha - g.c * beta) / dl;
      if (u == 0) continue;
      Mat2 kap{a1 * alpha + b1 * beta, a2 * alpha + b2 * beta, alpha, beta};
      if (!in_k(kap, p, c)) continue;
      Mat2 mm = g * kap.inverse();
      Rational z = -mm.c;
      if (z == 0) continue;
      Rational x = -mm.a / z;
      CosetDatum out{t, k, v, z, x, kap};
      if (reconstruct(out, p) == g) return out;
    }
  }
  return std::nullopt;
}

}  // namespace

Mat2 reconstruct(const CosetDatum& d, long p) {
  return Mat2::scalar(d.z) * Mat2::unipotent(d.x) * g_tkv(p, d.t, d.k, Rational(d.v)) * d.kappa;
}

CosetDatum decompose(const Mat2& g, long p, int c) {
  if (g.det() == 0) throw DomainError("decompose: singular matrix");
  const int vc = valuation(g.c, p), vd = valuation(g.d, p), vdet = valuation(g.det(), p);
  int k = 0, vz = 0;
  if (c == 0) {
    vz = std::min(vc, vd);
  } else {
    long delta = (g.c == 0) ? -1000000 : (g.d == 0 ? 1000000 : long(vd) - long(vc));
    if (delta >= 0) k = 0;
    else if (-delta < c) k = int(-delta);
    else k = c;
    vz = k < c ? vc : vd + c;
  }
  int t = vdet - 2 * vz;
  int mk = std::min(k, c - k);
  long v = 1;
  if (mk > 0) {
    Rational guess = ppow(p, k + t) * g.c * g.d / g.det();
    if (guess != 0 && valuation(guess, p) == 0) v = residue(guess, p, mk);
  }
  if (auto r = try_decompose(g, p, c, t, k, v)) return *r;
  // bounded search around the prediction
  for (int dt = 0; dt <= 8; ++dt) {
    for (int sgn : {1, -1}) {
      int tt = t + sgn * dt;
      for (int kk = 0; kk <= c; ++kk) {
        int m = std::min(kk, c - kk);
        long mod = ipow(p, m);
        for (long vv = 1; vv <= std::max(1L, mod); ++vv) {
          if (m > 0 && vv % p == 0) continue;
          if (auto r = try_decompose(g, p, c, tt, kk, m > 0 ? vv : 1)) return *r;
          if (m == 0) break;
        }
      }
      if (dt == 0) break;
    }
  }
  throw DomainError("decompose: no coset found for " + g.str());
}

// ---------------------------------------------------------------- groups

namespace {

// Rows for {Y : B Y C in L} given rows of L on vec(Y) = (y00, y01, y10, y11).
Lattice transform(const Lattice& l, const Mat2& bm, const Mat2& cm, long p) {
  const Rational bb[2][2] = {{bm.a, bm.b}, {bm.c, bm.d}};
  const Rational cc[2][2] = {{cm.a, cm.b}, {cm.c, cm.d}};
  Lattice out(4);
  for (const auto& r : l.rows()) {
    std::vector<Rational> nr(4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const Rational& rij = r[2 * i + j];
        if (rij == 0) continue;
        for (int k = 0; k < 2; ++k)
          for (int m = 0; m < 2; ++m) nr[2 * k + m] += rij * bb[i][k] * cc[m][j];
      }
    out.require(std::move(nr), 0, p);
  }
  return out;
}

Lattice integral_matrices(long p) {
  Lattice l(4);
  for (int i = 0; i < 4; ++i) l.require_coordinate(i, 0, p);
  return l;
}

long gl2_order(long p, int m) {
  return ipow(p, 4 * (m - 1)) * (p * p - 1) * (p * p - p);
}

long mat_det_mod(const std::array<long, 4>& y, long mod) {
  __int128 v = (__int128)y[0] * y[3] - (__int128)y[1] * y[2];
  long r = long(v % mod);
  return r < 0 ? r + mod : r;
}

}  // namespace

OpenCompact::OpenCompact(long p, Lattice lie, std::string tag)
    : p_(p), lie_(std::move(lie)), tag_(std::move(tag)) {}

OpenCompact OpenCompact::k_level(long p, int c) {
  Lattice l(4);
  l.require_coordinate(0, 0, p);
  l.require_coordinate(1, 0, p);
  l.require_coordinate(2, c, p);
  l.require_coordinate(3, c, p);
  return OpenCompact(p, l, c == 0 ? "GL2(O)" : "K_" + std::to_string(c));
}

int OpenCompact::level() const {
  int l = 0;
  for (const auto& r : lie_.rows())
    for (const auto& x : r)
      if (x != 0) l = std::max(l, -valuation(x, p_));
  return l;
}

bool OpenCompact::contains(const Mat2& g) const {
  if (!g.integral(p_) || valuation(g.det(), p_) != 0) return false;
  Mat2 y = g - Mat2::identity();
  auto e = y.entries();
  return lie_.contains({e[0], e[1], e[2], e[3]}, p_);
}

OpenCompact OpenCompact::intersect(const OpenCompact& o) const {
  return OpenCompact(p_, lie_.intersect(o.lie_), tag_ + " & " + o.tag_);
}

OpenCompact OpenCompact::conjugate(const Mat2& a) const {
  Lattice l = transform(lie_, a.inverse(), a, p_).intersect(integral_matrices(p_));
  return OpenCompact(p_, l, "conj(" + tag_ + ")");
}

OpenCompact OpenCompact::row_stabilizer(const Rational& r1, const Rational& r2, int m) const {
  Lattice l = lie_;
  l.require({r1, 0, r2, 0}, m, p_);
  l.require({0, r1, 0, r2}, m, p_);
  return OpenCompact(p_, l, tag_ + " & stab");
}

Rational unit_det_fraction(const std::vector<Rational>& point, const std::vector<std::vector<Rational>>& basis,
                           long p) {
  // image in M2(F_p): offset plus a row-reduced spanning set
  std::array<long, 4> base{};
  for (int i = 0; i < 4; ++i) base[i] = residue(point[i], p, 1);
  std::vector<std::array<long, 4>> red;
  for (const auto& b : basis) {
    std::array<long, 4> v{};
    for (int i = 0; i < 4; ++i) v[i] = residue(b[i], p, 1);
    for (const auto& r : red) {
      int piv = 0;
      while (r[piv] == 0) ++piv;
      long f = v[piv] * mod_inverse(r[piv], p) % p;
      for (int i = 0; i < 4; ++i) v[i] = mod_pos(v[i] - f * r[i], p);
    }
    if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) red.push_back(v);
  }
  long total = ipow(p, int(red.size())), good = 0;
  for (long idx = 0; idx < total; ++idx) {
    long t = idx;
    std::array<long, 4> y{(base[0] + 1) % p, base[1], base[2], (base[3] + 1) % p};
    for (const auto& r : red) {
      long cj = t % p;
      t /= p;
      for (int i = 0; i < 4; ++i) y[i] = (y[i] + cj * r[i]) % p;
    }
    if (mat_det_mod(y, p) != 0) ++good;
  }
  Rational frac(good, total);
  frac.canonicalize();
  return frac;
}

OpenCompact OpenCompact::line_stabilizer(const Rational& r1, const Rational& r2, int m) const {
  Lattice l = lie_;
  // (r Y) . (-r2, r1) in p^m O
  l.require({-r1 * r2, r1 * r1, -r2 * r2, r1 * r2}, m, p_);
  return OpenCompact(p_, l, tag_ + " & line");
}

Rational OpenCompact::volume() const {
  const long p = p_;
  auto sh = lie_.shape(p);
  const Rational frac = unit_det_fraction(std::vector<Rational>(4), sh.basis, p);
  Rational q(p);
  return ppow(p, sh.log_measure) * frac / ((1 - 1 / q) * (1 - 1 / (q * q)));
}

Rational OpenCompact::volume_by_count(int m) const {
  if (m < 0) m = std::max(1, level());
  const long mod = ipow(p_, m);
  long count = 0;
  std::array<long, 4> y{};
  for (y[0] = 0; y[0] < mod; ++y[0])
    for (y[1] = 0; y[1] < mod; ++y[1])
      for (y[2] = 0; y[2] < mod; ++y[2])
        for (y[3] = 0; y[3] < mod; ++y[3]) {
          if (mat_det_mod(y, p_) == 0) continue;
          if (contains(Mat2{y[0], y[1], y[2], y[3]})) ++count;
        }
  Rational r(count, gl2_order(p_, m));
  r.canonicalize();
  return r;
}

std::vector<Mat2> enumerate_quotient(const OpenCompact& big, const OpenCompact& small, int m) {
  const long p = big.prime();
  if (m < 0) m = std::max({1, big.level(), small.level()});
  const long mod = ipow(p, m);
  auto code = [&](const std::array<long, 4>& y) {
    return ((y[0] * mod + y[1]) * mod + y[2]) * mod + y[3];
  };
  std::vector<std::array<long, 4>> bigs, smalls;
  std::array<long, 4> y{};
  for (y[0] = 0; y[0] < mod; ++y[0])
    for (y[1] = 0; y[1] < mod; ++y[1])
      for (y[2] = 0; y[2] < mod; ++y[2])
        for (y[3] = 0; y[3] < mod; ++y[3]) {
          if (mat_det_mod(y, p) == 0) continue;
          Mat2 g{y[0], y[1], y[2], y[3]};
          if (big.contains(g)) bigs.push_back(y);
          if (small.contains(g)) smalls.push_back(y);
        }
  std::unordered_set<long> covered;
  std::vector<Mat2> reps;
  for (const auto& g : bigs) {
    if (covered.count(code(g))) continue;
    reps.push_back(Mat2{g[0], g[1], g[2], g[3]});
    for (const auto& s : smalls) {
      std::array<long, 4> h{(g[0] * s[0] + g[1] * s[2]) % mod, (g[0] * s[1] + g[1] * s[3]) % mod,
                            (g[2] * s[0] + g[3] * s[2]) % mod, (g[2] * s[1] + g[3] * s[3]) % mod};
      covered.insert(code(h));
    }
  }
  return reps;
}

Rational volume_p(const Lattice& p_lie, long p) {
  auto sh = p_lie.shape(p);
  bool a_deep = true;
  for (const auto& b : sh.basis) {
    if (b[0] != 0 && valuation(b[0], p) < 0) throw DomainError("volume_p: non-compact subgroup");
    if (b[0] != 0 && valuation(b[0], p) == 0) a_deep = false;
  }
  Rational q(p);
  Rational frac = a_deep ? Rational(1) : 1 - 1 / q;
  return ppow(p, sh.log_measure) * frac / (1 - 1 / q);
}

Lattice p_lie_of_conjugates(long p, const std::vector<std::pair<Mat2, int>>& gk) {
  Lattice l(2);
  for (const auto& [g, c] : gk) {
    Mat2 gi = g.inverse();
    const Rational ginv_col0[2] = {gi.a, gi.c};
    const Rational top[2] = {g.a, g.b}, bot[2] = {g.c, g.d};
    // (g^{-1} Y g)_{ij} = ginv_{i0} (a g_{0j} + b g_{1j})
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        l.require({ginv_col0[i] * top[j], ginv_col0[i] * bot[j]}, i == 0 ? 0 : c, p);
  }
  return l;
}

}  // namespace rsz
