#include "rsz/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace rsz {

LaurentPoly LaurentPoly::monomial(int pow, const CycScalar& c) {
  LaurentPoly p;
  p.set(pow, c);
  return p;
}

CycScalar LaurentPoly::coeff(int n) const {
  auto it = c_.find(n);
  return it == c_.end() ? CycScalar() : it->second;
}

void LaurentPoly::set(int n, const CycScalar& c) {
  if (c.is_zero()) c_.erase(n);
  else c_[n] = c;
}

void LaurentPoly::add(int n, const CycScalar& c) {
  if (c.is_zero()) return;
  auto it = c_.find(n);
  if (it == c_.end()) {
    c_.emplace(n, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) c_.erase(it);
}

int LaurentPoly::min_degree() const {
  if (c_.empty()) throw DomainError("degree of zero polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_degree() const {
  if (c_.empty()) throw DomainError("degree of zero polynomial");
  return c_.rbegin()->first;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [n, c] : o.c_) add(n, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [n, c] : o.c_) add(n, -c);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [n, c] : c_) r.c_.emplace(n, -c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  std::map<int, CycBuilder> acc;
  for (const auto& [i, x] : a.c_)
    for (const auto& [j, y] : b.c_) acc[i + j].add(x * y);
  LaurentPoly r;
  for (const auto& [n, bld] : acc) r.set(n, bld.build());
  return r;
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly r;
  for (const auto& [n, c] : c_) r.c_.emplace(n + k, c);
  return r;
}

LaurentPoly LaurentPoly::truncate(int max_pow) const {
  LaurentPoly r;
  for (const auto& [n, c] : c_)
    if (n <= max_pow) r.c_.emplace(n, c);
  return r;
}

CycScalar LaurentPoly::eval_at_one() const {
  CycBuilder b;
  for (const auto& [n, c] : c_) b.add(c);
  return b.build();
}

LaurentPoly LaurentPoly::conj() const {
  LaurentPoly r;
  for (const auto& [n, c] : c_) r.set(n, c.conj());
  return r;
}

LaurentPoly LaurentPoly::substitute(const std::string& name, const CycScalar& v) const {
  LaurentPoly r;
  for (const auto& [n, c] : c_) r.set(n, c.substitute(name, v));
  return r;
}

std::optional<LaurentPoly> LaurentPoly::divide_one_minus(const CycScalar& c, int d) const {
  if (d <= 0) throw DomainError("factor degree must be positive");
  if (c.is_zero()) return *this;
  if (c_.empty()) return LaurentPoly{};
  int lo = min_degree(), hi = max_degree();
  LaurentPoly q;
  for (int n = lo; n <= hi - d; ++n) q.set(n, coeff(n) + c * q.coeff(n - d));
  LaurentPoly check = q * LaurentPoly::monomial(0, CycScalar(1));
  check -= q.shift(d) * LaurentPoly(c);
  if (!(check == *this)) return std::nullopt;
  return q;
}

std::string LaurentPoly::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (n != 0) os << "*X^" << n;
  }
  return os.str();
}

// ---------------------------------------------------------------- descriptors

LFactorDescriptor::LFactorDescriptor(std::vector<LFactor> f) {
  for (auto& x : f) {
    if (x.d <= 0) throw DomainError("L-factor degree must be positive");
    if (!x.c.is_zero()) f_.push_back(std::move(x));
  }
}

LaurentPoly LFactorDescriptor::inverse_poly() const {
  LaurentPoly r(CycScalar(1));
  for (const auto& x : f_) {
    LaurentPoly f(CycScalar(1));
    f.add(x.d, -x.c);
    r = r * f;
  }
  return r;
}

LFactorDescriptor LFactorDescriptor::operator*(const LFactorDescriptor& o) const {
  LFactorDescriptor r = *this;
  r.f_.insert(r.f_.end(), o.f_.begin(), o.f_.end());
  return r;
}

LFactorDescriptor LFactorDescriptor::minus(const LFactorDescriptor& o) const {
  std::vector<bool> used(o.f_.size(), false);
  LFactorDescriptor r;
  for (const auto& x : f_) {
    bool matched = false;
    for (size_t i = 0; i < o.f_.size(); ++i) {
      if (!used[i] && o.f_[i] == x) {
        used[i] = matched = true;
        break;
      }
    }
    if (!matched) r.f_.push_back(x);
  }
  return r;
}

LFactorDescriptor LFactorDescriptor::lcm(const LFactorDescriptor& o) const {
  return *this * o.minus(*this);
}

LFactorDescriptor LFactorDescriptor::substitute(const std::string& name, const CycScalar& v) const {
  std::vector<LFactor> f;
  for (const auto& x : f_) f.push_back({x.c.substitute(name, v), x.d});
  return LFactorDescriptor(std::move(f));
}

std::string LFactorDescriptor::str() const {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < f_.size(); ++i)
    os << (i ? ", " : "") << "(" << f_[i].c.str() << ", " << f_[i].d << ")";
  os << "}";
  return os.str();
}

LaurentPoly series_expand(const LFactorDescriptor& l, int bound) {
  LaurentPoly r(CycScalar(1));
  for (const auto& x : l.factors()) {
    // multiply by 1 + cX^d + c^2 X^{2d} + ... truncated
    LaurentPoly geo;
    CycScalar pw(1);
    for (int k = 0; k * x.d <= bound; ++k) {
      geo.set(k * x.d, pw);
      pw *= x.c;
    }
    r = (r * geo).truncate(bound);
  }
  return r;
}

ZetaValue operator+(const ZetaValue& a, const ZetaValue& b) {
  LFactorDescriptor common = a.l_part.lcm(b.l_part);
  LaurentPoly pa = a.poly * common.minus(a.l_part).inverse_poly();
  LaurentPoly pb = b.poly * common.minus(b.l_part).inverse_poly();
  return {common, pa + pb};
}

ZetaValue operator*(const ZetaValue& a, const LaurentPoly& f) { return {a.l_part, a.poly * f}; }

bool equivalent(const ZetaValue& a, const ZetaValue& b) {
  return a.poly * b.l_part.inverse_poly() == b.poly * a.l_part.inverse_poly();
}

LaurentPoly renormalize(const ZetaValue& z, const LFactorDescriptor& target) {
  LaurentPoly num = z.poly * target.minus(z.l_part).inverse_poly();
  const LFactorDescriptor extra = z.l_part.minus(target);
  for (const auto& f : extra.factors()) {
    auto q = num.divide_one_minus(f.c, f.d);
    if (!q)
      throw PoleMismatch("pole (1 - (" + f.c.str() + ") X^" + std::to_string(f.d) +
                         ")^-1 not covered by the target L-factor");
    num = std::move(*q);
  }
  return num;
}

}  // namespace rsz
