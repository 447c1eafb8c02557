#include "rsz/characters.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace rsz {

std::pair<long, long> psi_root(const Rational& x, long p) {
  int v = valuation(x, p);
  if (v >= 0) return {1, 0};
  int m = -v;
  return {ipow(p, m), residue(x * ppow(p, m), p, m)};
}

CycScalar psi(const Rational& x, long p) {
  auto [n, k] = psi_root(x, p);
  return CycScalar::zeta(n, k);
}

namespace {

long powmod(long b, long e, long m) {
  __int128 r = 1, x = mod_pos(b, m);
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return long(r);
}

int legendre(long a, long p) {
  a = mod_pos(a, p);
  if (a == 0) return 0;
  return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

long smallest_nonresidue(long p) {
  for (long e = 2; e < p; ++e)
    if (legendre(e, p) == -1) return e;
  throw DomainError("no non-residue");
}

}  // namespace

long primitive_root(long p) {
  if (p == 2) throw DomainError("p = 2 is not supported");
  long phi = p - 1;
  std::vector<long> qs;
  for (long q = 2, m = phi; m > 1; ++q)
    if (m % q == 0) {
      qs.push_back(q);
      while (m % q == 0) m /= q;
    }
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : qs) ok &= powmod(g, phi / q, p) != 1;
    if (!ok) continue;
    // primitive modulo p^2 makes it primitive modulo every p^c
    if (powmod(g, p - 1, p * p) == 1) return g + p;
    return g;
  }
  throw DomainError("no primitive root");
}

// ---------------------------------------------------------------- DlogTable

DlogTable::DlogTable(long p, int c) : p_(p), c_(c) {
  mod_ = ipow(p, c);
  order_ = c == 0 ? 1 : mod_ / p * (p - 1);
  g_ = c == 0 ? 1 : primitive_root(p) % mod_;
  log_.assign(size_t(mod_), -1);
  if (c == 0) {
    log_[0] = 0;
    return;
  }
  long x = 1;
  for (long i = 0; i < order_; ++i) {
    log_[size_t(x)] = i;
    x = x * g_ % mod_;
  }
}

std::shared_ptr<const DlogTable> DlogTable::get(long p, int c) {
  if (c < 0 || ipow(p, c) > 3125) throw DomainError("discrete log table too large");
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::shared_ptr<const DlogTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, c}];
  if (!slot) slot = std::shared_ptr<const DlogTable>(new DlogTable(p, c));
  return slot;
}

// ---------------------------------------------------------------- MultChar

MultChar::MultChar(long p, int c, long exp, CycScalar value_at_p)
    : p_(p), c_(c), exp_(exp), at_p_(std::move(value_at_p)) {
  if (c < 0) throw DomainError("negative conductor");
  order_ = c == 0 ? 1 : ipow(p, c - 1) * (p - 1);
  exp_ = mod_pos(exp_, order_);
  while (c_ >= 2 && exp_ % p_ == 0) {
    exp_ /= p_;
    --c_;
    order_ /= p_;
  }
  if (c_ == 1 && exp_ == 0) {
    c_ = 0;
    order_ = 1;
  }
  table_ = DlogTable::get(p_, c_);
}

long MultChar::unit_log_residue(long r) const {
  if (c_ == 0) return 0;
  long l = table_->log(r);
  if (l < 0) throw DomainError("character evaluated at a non-unit");
  return l * exp_ % order_;
}

long MultChar::unit_log(const Rational& u) const {
  if (c_ == 0) return 0;
  return unit_log_residue(residue(u, p_, c_));
}

CycScalar MultChar::on_unit(const Rational& u) const { return CycScalar::zeta(order_, unit_log(u)); }

CycScalar MultChar::operator()(const Rational& x) const {
  if (x == 0) throw DomainError("character at zero");
  int v = valuation(x, p_);
  CycScalar r = on_unit(x / ppow(p_, v));
  if (v != 0) r *= at_p_.pow(v);
  return r;
}

MultChar MultChar::inverse() const {
  return MultChar(p_, c_, -exp_, at_p_.is_zero() ? at_p_ : at_p_.inverse());
}

MultChar MultChar::operator*(const MultChar& o) const {
  if (o.p_ != p_) throw DomainError("characters over different primes");
  int c = std::max(c_, o.c_);
  long ord = c == 0 ? 1 : ipow(p_, c - 1) * (p_ - 1);
  long e = exp_ * (ord / order_) + o.exp_ * (ord / o.order_);
  return MultChar(p_, c, e, at_p_ * o.at_p_);
}

bool MultChar::operator==(const MultChar& o) const {
  return p_ == o.p_ && c_ == o.c_ && exp_ == o.exp_ && at_p_ == o.at_p_;
}

std::string MultChar::str() const {
  std::ostringstream os;
  os << "chi(p=" << p_ << ", c=" << c_ << ", exp=" << exp_ << ", at_p=" << at_p_.str() << ")";
  return os.str();
}

long b_chi(const MultChar& chi) {
  const int c = chi.conductor();
  if (c < 2) throw DomainError("b_chi needs conductor >= 2");
  const long p = chi.p();
  const int lo = c / 2, hi = (c + 1) / 2;
  const long mlo = ipow(p, lo);
  long found = -1;
  for (long b = 1; b < mlo; ++b) {
    if (b % p == 0) continue;
    bool ok = true;
    for (long y = 0; y < mlo && ok; ++y) {
      // chi(1 + p^hi y) = zeta_ord^L versus psi(b y / p^lo)
      Rational lhs(chi.unit_log(Rational(1 + ipow(p, hi) * y)), chi.unit_order());
      Rational rhs(b * y % mlo, mlo);
      lhs.canonicalize();
      rhs.canonicalize();
      ok = lhs == rhs;
    }
    if (ok) {
      if (found >= 0) throw DomainError("b_chi: not unique");
      found = b;
    }
  }
  if (found < 0) throw DomainError("b_chi: no solution");
  return found;
}

// ---------------------------------------------------------------- quadratic extensions

std::string ext_kind_name(ExtKind k) {
  switch (k) {
    case ExtKind::Inert: return "inert";
    case ExtKind::Ramified1: return "ramified_1";
    case ExtKind::Ramified2: return "ramified_2";
  }
  return "?";
}

ExtKind ext_kind_from_name(const std::string& s) {
  if (s == "inert") return ExtKind::Inert;
  if (s == "ramified_1") return ExtKind::Ramified1;
  if (s == "ramified_2") return ExtKind::Ramified2;
  throw DomainError("unknown extension kind " + s);
}

QuadExt::QuadExt(long p, ExtKind kind) : p_(p), kind_(kind) {
  if (p == 2) throw DomainError("p = 2 is not supported");
  long e = smallest_nonresidue(p);
  switch (kind) {
    case ExtKind::Inert: d_ = e; break;
    case ExtKind::Ramified1: d_ = -p; break;
    case ExtKind::Ramified2: d_ = -e * p; break;
  }
}

EElt QuadExt::inv(const EElt& x) const {
  Rational n = norm(x);
  if (n == 0) throw DomainError("inverse of zero in E");
  return {x.a / n, -x.b / n};
}

EElt QuadExt::uniformizer() const {
  if (kind_ == ExtKind::Inert) return {Rational(p_), 0};
  return {0, 1};
}

EElt QuadExt::pow(const EElt& x, int n) const {
  EElt base = n < 0 ? inv(x) : x, r{1, 0};
  for (int i = 0; i < (n < 0 ? -n : n); ++i) r = mul(r, base);
  return r;
}

int QuadExt::valuation(const EElt& x) const {
  int v = rsz::valuation(norm(x), p_);
  if (v == kInfVal) return kInfVal;
  return kind_ == ExtKind::Inert ? v / 2 : v;
}

long QuadExt::residue_index(const EElt& u) const {
  if (f() == 2) return residue(u.a, p_, 1) + p_ * residue(u.b, p_, 1);
  return residue(u.a, p_, 1);
}

std::vector<EElt> QuadExt::residues(int m) const {
  std::vector<EElt> out;
  long ma, mb;
  if (kind_ == ExtKind::Inert) {
    ma = mb = ipow(p_, m);
  } else {
    ma = ipow(p_, (m + 1) / 2);
    mb = ipow(p_, m / 2);
  }
  for (long a = 0; a < ma; ++a)
    for (long b = 0; b < mb; ++b) out.push_back({Rational(a), Rational(b)});
  return out;
}

int QuadExt::eta(const Rational& x) const {
  if (x == 0) throw DomainError("eta at zero");
  int v = rsz::valuation(x, p_);
  Rational u = x / ppow(p_, v);
  if (kind_ == ExtKind::Inert) return v % 2 == 0 ? 1 : -1;
  int eu = legendre(residue(u, p_, 1), p_);
  // Nr(uniformizer) = -D = p w, so eta(p) = eta(w)
  long w = residue(-d_ / p_, p_, 1);
  int ep = legendre(w, p_);
  return eu * ((v % 2 == 0) ? 1 : ep);
}

// ---------------------------------------------------------------- ECharacter

ECharacter::ECharacter(QuadExt ext, long exp, CycScalar value_at_uniformizer)
    : ext_(std::move(ext)), at_pi_(std::move(value_at_uniformizer)) {
  const long p = ext_.p();
  const long size = ext_.residue_size();
  order_ = size - 1;
  exp_ = mod_pos(exp, order_);
  const long dm = residue(ext_.d(), p, 1);
  auto mulf = [&](long x, long y) {
    long xa = x % p, xb = x / p, ya = y % p, yb = y / p;
    if (ext_.f() == 1) return xa * ya % p;
    long a = (xa * ya + dm * xb % p * yb) % p, b = (xa * yb + xb * ya) % p;
    return a + p * b;
  };
  for (long g = 1; g < size; ++g) {
    std::vector<long> lg(size_t(size), -1);
    long x = 1;
    long i = 0;
    for (; i < order_; ++i) {
      if (lg[size_t(x)] >= 0) break;
      lg[size_t(x)] = i;
      x = mulf(x, g);
    }
    if (i == order_ && x == 1) {
      gen_index_ = g;
      log_ = std::move(lg);
      return;
    }
  }
  throw DomainError("no generator of the residue field");
}

long ECharacter::unit_log(const EElt& u) const {
  long l = log_[size_t(ext_.residue_index(u))];
  if (l < 0) throw DomainError("E-character at a non-unit");
  return l * exp_ % order_;
}

CycScalar ECharacter::operator()(const EElt& x) const {
  int v = ext_.valuation(x);
  if (v == kInfVal) throw DomainError("E-character at zero");
  EElt u = ext_.mul(x, ext_.pow(ext_.uniformizer(), -v));
  CycScalar r = CycScalar::zeta(order_, unit_log(u));
  if (v != 0) r *= at_pi_.pow(v);
  return r;
}

ECharacter ECharacter::normalized(const QuadExt& ext, long exp) {
  ECharacter xi(ext, exp, CycScalar(1));
  const long p = ext.p();
  if (ext.kind() == ExtKind::Inert) return ECharacter(ext, exp, CycScalar(-1));
  // p = unit * uniformizer^2, so omega(p) = eta(p) xi(unit) xi(pi_E)^2 = 1
  EElt pi = ext.uniformizer();
  EElt unit = ext.mul({Rational(p), 0}, ext.inv(ext.mul(pi, pi)));
  long ord = xi.unit_order();
  // omega(p) condition: xi(pi)^2 = eta(p)^{-1} xi(unit)^{-1} = zeta_{2 ord}^m
  long m = -2 * xi.unit_log(unit) + (ext.eta(Rational(p)) == 1 ? 0 : ord);
  m = mod_pos(m, 2 * ord);
  return ECharacter(ext, exp, CycScalar::zeta(4 * ord, m));
}

ECharacter ECharacter::inverse() const { return ECharacter(ext_, -exp_, at_pi_.inverse()); }

ECharacter ECharacter::operator*(const ECharacter& o) const {
  if (o.ext_.kind() != ext_.kind() || o.ext_.p() != ext_.p()) throw DomainError("characters of different fields");
  return ECharacter(ext_, exp_ + o.exp_, at_pi_ * o.at_pi_);
}

ECharacter ECharacter::galois_conjugate() const {
  if (ext_.kind() == ExtKind::Inert) return ECharacter(ext_, exp_ * ext_.p(), at_pi_);
  // sigma(pi_E) = -pi_E
  return ECharacter(ext_, exp_, at_pi_ * (*this)({Rational(-1), 0}));
}

bool ECharacter::regular() const {
  ECharacter s = galois_conjugate();
  return !(s == *this);
}

bool ECharacter::operator==(const ECharacter& o) const {
  return ext_.kind() == o.ext_.kind() && exp_ == o.exp_ && at_pi_ == o.at_pi_;
}

MultChar ECharacter::central_character() const {
  const long p = ext_.p();
  long g = primitive_root(p);
  // omega(g) = eta(g) xi(g) = zeta_{2 ord}^{2 L + (eta(g) == -1 ? ord : 0)}
  long lg = unit_log({Rational(g), 0});
  long m = 2 * lg + (ext_.eta(Rational(g)) == 1 ? 0 : order_);
  // omega(g) is a (p-1)-th root of unity: m / (2 ord) = e / (p - 1)
  Rational frac(m, 2 * order_);
  frac *= (p - 1);
  frac.canonicalize();
  if (frac.get_den() != 1) throw DomainError("central character is not a character of F_p^x");
  long e = Integer(frac.get_num()).get_si();
  CycScalar at_p = CycScalar(ext_.eta(Rational(p))) * on_base(Rational(p));
  return MultChar(p, 1, e, at_p);
}

std::string ECharacter::str() const {
  std::ostringstream os;
  os << "xi(" << ext_kind_name(ext_.kind()) << ", exp=" << exp_ << ", at_pi=" << at_pi_.str() << ")";
  return os.str();
}

}  // namespace rsz
