#include "rsz/cyclotomic.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace rsz {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::symbol(const std::string& name, int exp) {
  Monomial m;
  if (exp != 0) m.f_.emplace_back(name, exp);
  return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto a = f_.begin(), b = o.f_.begin();
  while (a != f_.end() || b != o.f_.end()) {
    if (b == o.f_.end() || (a != f_.end() && a->first < b->first)) {
      r.f_.push_back(*a++);
    } else if (a == f_.end() || b->first < a->first) {
      r.f_.push_back(*b++);
    } else {
      int e = a->second + b->second;
      if (e != 0) r.f_.emplace_back(a->first, e);
      ++a, ++b;
    }
  }
  return r;
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int n) const {
  Monomial r;
  if (n == 0) return r;
  for (const auto& [s, e] : f_) r.f_.emplace_back(s, e * n);
  return r;
}

int Monomial::exponent(const std::string& name) const {
  for (const auto& [s, e] : f_)
    if (s == name) return e;
  return 0;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial r;
  for (const auto& f : f_)
    if (f.first != name) r.f_.push_back(f);
  return r;
}

std::string Monomial::str() const {
  std::string out;
  for (const auto& [s, e] : f_) {
    if (!out.empty()) out += "*";
    out += s;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------- level data

namespace {

struct Component {
  long ell, e, n, top, eps;  // prime, exponent, ell^e, ell^{e-1}, CRT idempotent
};

std::vector<Component> components(long level) {
  static std::mutex mu;
  static std::unordered_map<long, std::vector<Component>> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(level); it != cache.end()) return it->second;
  std::vector<Component> out;
  long m = level;
  for (long ell = 2; ell * ell <= m || m > 1; ++ell) {
    if (ell * ell > m) ell = m;
    if (m % ell) continue;
    long n = 1, e = 0;
    while (m % ell == 0) m /= ell, n *= ell, ++e;
    long rest = level / n;
    long eps = rest % level * mod_inverse(rest % n, n) % level;
    if (n == level) eps = 1;
    out.push_back({ell, e, n, n / ell, eps});
  }
  cache.emplace(level, out);
  return out;
}

}  // namespace

long euler_phi(long n) {
  long r = 1;
  for (const auto& c : components(n)) r *= c.n - c.top;
  return r;
}

std::vector<long> canonical_exponents(long n) {
  auto comps = components(n);
  std::vector<long> out;
  for (long j = 0; j < n; ++j) {
    bool ok = true;
    for (const auto& c : comps)
      if ((j % c.n) / c.top == c.ell - 1) { ok = false; break; }
    if (ok) out.push_back(j);
  }
  return out;
}

// ---------------------------------------------------------------- CycScalar core

void CycScalar::add_to(TermMap& m, const Key& k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

CycScalar::TermMap CycScalar::reduce(const TermMap& m, long level) {
  TermMap cur = m;
  for (const auto& c : components(level)) {
    TermMap next;
    for (const auto& [k, v] : cur) {
      long a = k.zeta % c.n;
      if (a / c.top != c.ell - 1) {
        add_to(next, k, v);
        continue;
      }
      for (long b = 0; b + 1 < c.ell; ++b) {
        Key nk = k;
        long shift = (b - (c.ell - 1)) * c.top % level * c.eps % level;
        nk.zeta = mod_pos(k.zeta + shift, level);
        add_to(next, nk, -v);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

void CycScalar::set_prime(long p) {
  if (p == 0) return;
  if (p_ != 0 && p_ != p) throw DomainError("mixing scalars over different primes");
  p_ = p;
}

void CycScalar::normalize(TermMap raw, long level) {
  TermMap cur = reduce(raw, level);
  bool moved = true;
  while (moved && level > 1) {
    moved = false;
    for (const auto& c : components(level)) {
      bool sub = std::all_of(cur.begin(), cur.end(), [&](const auto& kv) {
        long a = kv.first.zeta % c.n;
        return c.e >= 2 ? a % c.ell == 0 : a == 0;
      });
      if (!sub) continue;
      long nl = level / c.ell;
      TermMap down;
      for (const auto& [k, v] : cur) {
        Key nk = k;
        nk.zeta = (k.zeta / c.ell) % nl;
        add_to(down, nk, v);
      }
      cur = reduce(down, nl);
      level = nl;
      moved = true;
      break;
    }
  }
  if (cur.empty()) level = 1;
  level_ = level;
  t_ = std::move(cur);
}

CycScalar::TermMap CycScalar::lifted(long level) const {
  if (level == level_) return t_;
  long f = level / level_;
  TermMap out;
  for (const auto& [k, v] : t_) {
    Key nk = k;
    nk.zeta = k.zeta * f;
    out.emplace(nk, v);
  }
  return out;
}

CycScalar::CycScalar(const Rational& r) {
  if (r != 0) t_.emplace(Key{}, r);
}

CycScalar CycScalar::zeta(long n, long k) {
  if (n <= 0) throw DomainError("zeta: level must be positive");
  CycScalar s;
  TermMap m;
  m.emplace(Key{Monomial{}, 0, mod_pos(k, n)}, Rational(1));
  s.normalize(std::move(m), n);
  return s;
}

CycScalar CycScalar::sqrt_q(long p) {
  CycScalar s;
  s.p_ = p;
  s.t_.emplace(Key{Monomial{}, 1, 0}, Rational(1));
  return s;
}

CycScalar CycScalar::symbol(const std::string& name, int exp) {
  CycScalar s;
  s.t_.emplace(Key{Monomial::symbol(name, exp), 0, 0}, Rational(1));
  return s;
}

CycScalar CycScalar::from_terms(long level, long p, const std::vector<Term>& terms) {
  if (level <= 0) throw DomainError("level must be positive");
  CycScalar s;
  TermMap m;
  for (const auto& t : terms) {
    if (t.qdeg < 0 || t.qdeg > 1) throw DomainError("q_half_deg must be 0 or 1");
    if (t.qdeg == 1) s.set_prime(p);
    add_to(m, Key{t.mono, t.qdeg, mod_pos(t.zeta, level)}, t.coeff);
  }
  s.normalize(std::move(m), level);
  return s;
}

bool CycScalar::is_one() const {
  return t_.size() == 1 && t_.begin()->first == Key{} && t_.begin()->second == 1;
}

std::optional<Rational> CycScalar::as_rational() const {
  if (t_.empty()) return Rational(0);
  if (t_.size() == 1 && t_.begin()->first == Key{}) return t_.begin()->second;
  return std::nullopt;
}

bool CycScalar::has_symbols() const {
  return std::any_of(t_.begin(), t_.end(), [](const auto& kv) { return !kv.first.mono.is_one(); });
}

bool CycScalar::has_sqrt() const {
  return std::any_of(t_.begin(), t_.end(), [](const auto& kv) { return kv.first.qdeg != 0; });
}

std::vector<CycScalar::Term> CycScalar::terms() const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& [k, v] : t_) out.push_back({k.zeta, k.qdeg, k.mono, v});
  return out;
}

std::vector<CycScalar::Term> CycScalar::terms_at(long level) const {
  if (level % level_) throw DomainError("terms_at: level must be a multiple");
  std::vector<Term> out;
  for (const auto& [k, v] : reduce(lifted(level), level)) out.push_back({k.zeta, k.qdeg, k.mono, v});
  return out;
}

std::vector<std::string> CycScalar::symbol_names() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : t_)
    for (const auto& f : k.mono.factors()) out.push_back(f.first);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
  if (o.is_zero()) return *this;
  set_prime(o.p_);
  long l = lcm_l(level_, o.level_);
  TermMap m = lifted(l);
  for (const auto& [k, v] : o.lifted(l)) add_to(m, k, v);
  normalize(std::move(m), l);
  return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) { return *this += -o; }

CycScalar CycScalar::operator-() const {
  CycScalar r = *this;
  for (auto& [k, v] : r.t_) v = -v;
  return r;
}

CycScalar operator*(const CycScalar& a, const CycScalar& b) {
  CycScalar r;
  if (a.is_zero() || b.is_zero()) return r;
  r.set_prime(a.p_);
  r.set_prime(b.p_);
  if (auto q = b.as_rational()) {
    r = a;
    for (auto& [k, v] : r.t_) v *= *q;
    return r;
  }
  if (auto q = a.as_rational()) return b * a;
  long l = lcm_l(a.level_, b.level_);
  long fa = l / a.level_, fb = l / b.level_;
  CycScalar::TermMap m;
  for (const auto& [ka, va] : a.t_) {
    for (const auto& [kb, vb] : b.t_) {
      CycScalar::Key k;
      k.mono = ka.mono * kb.mono;
      k.zeta = (ka.zeta * fa + kb.zeta * fb) % l;
      k.qdeg = ka.qdeg + kb.qdeg;
      Rational c = va * vb;
      if (k.qdeg == 2) {
        k.qdeg = 0;
        c *= r.p_;
      }
      CycScalar::add_to(m, k, c);
    }
  }
  r.normalize(std::move(m), l);
  return r;
}

CycScalar& CycScalar::operator*=(const CycScalar& o) { return *this = *this * o; }

bool operator==(const CycScalar& a, const CycScalar& b) {
  return a.level_ == b.level_ && a.t_ == b.t_;
}

CycScalar CycScalar::slice(int qdeg, const Monomial& mono) const {
  CycScalar r;
  TermMap m;
  for (const auto& [k, v] : t_)
    if (k.qdeg == qdeg && k.mono == mono) m.emplace(Key{Monomial{}, 0, k.zeta}, v);
  r.normalize(std::move(m), level_);
  return r;
}

namespace {

// Inverse of a nonzero element of Q(zeta_n) (no Q, no symbols) by solving the
// multiplication-matrix system on the canonical basis.
CycScalar field_inverse(const CycScalar& d) {
  long n = d.level();
  auto basis = canonical_exponents(n);
  size_t dim = basis.size();
  std::unordered_map<long, size_t> index;
  for (size_t i = 0; i < dim; ++i) index[basis[i]] = i;
  // column i = coordinates of d * zeta^{basis[i]}
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim + 1));
  for (size_t i = 0; i < dim; ++i) {
    CycScalar col = d * CycScalar::zeta(n, basis[i]);
    for (const auto& t : col.terms_at(n)) a[index.at(t.zeta)][i] += t.coeff;
  }
  a[index.at(0)][dim] = 1;
  for (size_t c = 0; c < dim; ++c) {
    size_t piv = c;
    while (piv < dim && a[piv][c] == 0) ++piv;
    if (piv == dim) throw DomainError("inverse: zero divisor");
    std::swap(a[piv], a[c]);
    Rational inv = 1 / a[c][c];
    for (size_t j = c; j <= dim; ++j) a[c][j] *= inv;
    for (size_t r = 0; r < dim; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c];
      for (size_t j = c; j <= dim; ++j) a[r][j] -= f * a[c][j];
    }
  }
  std::vector<CycScalar::Term> terms;
  for (size_t i = 0; i < dim; ++i)
    if (a[i][dim] != 0) terms.push_back({basis[i], 0, Monomial{}, a[i][dim]});
  return CycScalar::from_terms(n, 0, terms);
}

}  // namespace

CycScalar CycScalar::inverse() const {
  if (is_zero()) throw DomainError("inversion of zero");
  if (auto q = as_rational()) return CycScalar(1 / *q);
  const Monomial mono = t_.begin()->first.mono;
  for (const auto& [k, v] : t_)
    if (k.mono != mono) throw DomainError("inverse: not a unit (several symbol monomials)");
  CycScalar c0 = slice(0, mono), c1 = slice(1, mono);
  CycScalar norm = c0 * c0 - c1 * c1 * Rational(p_);
  if (norm.is_zero()) throw DomainError("inverse: zero divisor in formal sqrt extension");
  CycScalar q = c1.is_zero() ? CycScalar(1) : CycScalar::sqrt_q(p_);
  CycScalar num = c0 - c1 * q;
  CycScalar ninv = norm.as_rational() ? CycScalar(1 / *norm.as_rational()) : field_inverse(norm);
  CycScalar r = num * ninv;
  if (!mono.is_one()) {
    CycScalar m;
    m.t_.emplace(Key{mono.inverse(), 0, 0}, Rational(1));
    r *= m;
  }
  return r;
}

CycScalar CycScalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  CycScalar r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

CycScalar CycScalar::conj() const {
  TermMap m;
  for (const auto& [k, v] : t_) {
    Key nk{k.mono.inverse(), k.qdeg, mod_pos(-k.zeta, level_)};
    add_to(m, nk, v);
  }
  CycScalar r;
  r.p_ = p_;
  r.normalize(std::move(m), level_);
  return r;
}

CycScalar CycScalar::substitute(const std::string& name, const CycScalar& value) const {
  CycScalar out;
  out.set_prime(p_);
  std::map<int, CycScalar> powers;
  for (const auto& [k, v] : t_) {
    int e = k.mono.exponent(name);
    CycScalar rest;
    rest.p_ = p_;
    TermMap m;
    m.emplace(Key{k.mono.without(name), k.qdeg, k.zeta}, v);
    rest.normalize(std::move(m), level_);
    if (e == 0) {
      out += rest;
      continue;
    }
    auto it = powers.find(e);
    if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
    out += rest * it->second;
  }
  return out;
}

std::string CycScalar::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : t_) {
    Rational c = v;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    first = false;
    std::vector<std::string> parts;
    if (c != 1 || (k.zeta == 0 && k.qdeg == 0 && k.mono.is_one())) parts.push_back(c.get_str());
    if (k.zeta != 0) parts.push_back("z" + std::to_string(level_) + "^" + std::to_string(k.zeta));
    if (k.qdeg) parts.push_back("Q");
    if (!k.mono.is_one()) parts.push_back(k.mono.str());
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

// ---------------------------------------------------------------- builder

void CycBuilder::grow(long level) {
  long l = lcm_l(level_, level);
  if (l == level_) return;
  long f = l / level_;
  CycScalar::TermMap m;
  for (const auto& [k, v] : t_) {
    auto nk = k;
    nk.zeta *= f;
    m.emplace(nk, v);
  }
  t_ = std::move(m);
  level_ = l;
}

void CycBuilder::add_root(long n, long k, const Rational& c) {
  grow(n);
  CycScalar::add_to(t_, {Monomial{}, 0, mod_pos(k, n) * (level_ / n)}, c);
}

void CycBuilder::add(const CycScalar& s) { add(s, Rational(1)); }

void CycBuilder::add(const CycScalar& s, const Rational& c) {
  if (s.is_zero() || c == 0) return;
  if (s.p_) {
    if (p_ && p_ != s.p_) throw DomainError("mixing scalars over different primes");
    p_ = s.p_;
  }
  grow(s.level_);
  long f = level_ / s.level_;
  for (const auto& [k, v] : s.t_) {
    auto nk = k;
    nk.zeta *= f;
    CycScalar::add_to(t_, nk, v * c);
  }
}

CycScalar CycBuilder::build() const {
  CycScalar r;
  r.p_ = p_;
  r.normalize(t_, level_);
  return r;
}

}  // namespace rsz
