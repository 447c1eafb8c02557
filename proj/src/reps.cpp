#include "rsz/reps.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "rsz/sums.hpp"

namespace rsz {

std::string rep_class_name(RepClass c) {
  switch (c) {
    case RepClass::Unramified: return "unramified";
    case RepClass::SteinbergUnr: return "steinberg";
    case RepClass::HalfRamified: return "half_ramified";
    case RepClass::FullyRamified: return "fully_ramified";
    case RepClass::SteinbergRam: return "steinberg_ramified";
    case RepClass::Supercuspidal: return "supercuspidal";
  }
  return "?";
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError("LocalRep: " + what);
}

ECharacter twisted(const ECharacter& xi, const CycScalar& t) {
  return ECharacter(xi.ext(), xi.exponent(), xi.value_at_uniformizer() * t.pow(xi.ext().f()));
}

// Langlands-parameter view used for the Rankin-Selberg table.
struct Param {
  enum Kind { PS, St, SC } kind;
  std::vector<MultChar> chars;  // PS: two characters; St: chi of St_chi
  std::optional<ECharacter> xi;
};

Param param(const LocalRep& pi) {
  const long p = pi.p();
  return std::visit(
      Overloaded{
          [&](const UnramifiedPS& d) {
            return Param{Param::PS, {MultChar::unramified(p, d.alpha), MultChar::unramified(p, d.beta)}, {}};
          },
          [&](const SteinbergUnr& d) { return Param{Param::St, {MultChar::unramified(p, d.chi_p)}, {}}; },
          [&](const HalfRamifiedPS& d) {
            return Param{Param::PS,
                         {d.omega.with_value_at_p(d.chi_p * d.twist),
                          MultChar::unramified(p, d.chi_p.inverse() * d.twist)},
                         {}};
          },
          [&](const FullyRamifiedPS& d) {
            return Param{Param::PS,
                         {d.chi1.with_value_at_p(d.chi_p * d.twist),
                          d.chi2.with_value_at_p(d.chi_p.inverse() * d.twist)},
                         {}};
          },
          [&](const SteinbergRam& d) { return Param{Param::St, {d.chi.with_value_at_p(d.twist)}, {}}; },
          [&](const Supercuspidal& d) { return Param{Param::SC, {}, twisted(d.xi, d.twist)}; },
      },
      pi.data());
}

void push_gl1(std::vector<LFactor>& out, const MultChar& chi, const CycScalar& shift) {
  if (chi.conductor() == 0) out.push_back({chi.value_at_p() * shift, 1});
}

}  // namespace

LocalRep::LocalRep(long p, Data d) : p_(p), d_(std::move(d)) {
  std::visit(Overloaded{
                 [](const UnramifiedPS&) {},
                 [](const SteinbergUnr&) {},
                 [&](const HalfRamifiedPS& h) {
                   require(h.omega.p() == p, "prime mismatch");
                   require(h.omega.conductor() >= 1, "half-ramified omega must be ramified");
                   require(h.omega.value_at_p().is_one(), "half-ramified omega(p) must be 1");
                 },
                 [&](const FullyRamifiedPS& f) {
                   require(f.chi1.conductor() >= 1 && f.chi2.conductor() >= 1, "fully-ramified characters must be ramified");
                   require(f.chi1.value_at_p().is_one() && f.chi2.value_at_p().is_one(), "chi_i(p) must be 1");
                   require(!(f.chi1 == f.chi2), "fully-ramified characters must differ");
                 },
                 [&](const SteinbergRam& s) {
                   require(s.chi.conductor() >= 1, "ramified Steinberg needs a ramified character");
                   require(s.chi.value_at_p().is_one(), "chi(p) must be 1");
                 },
                 [&](const Supercuspidal& s) {
                   require(s.xi.ext().p() == p, "prime mismatch");
                   require(s.xi.regular(), "xi must be regular");
                   require(s.xi.central_character().value_at_p().is_one(), "central character must be 1 at p");
                 },
             },
             d_);
}

bool LocalRep::whittaker_supported() const {
  RepClass c = cls();
  return c != RepClass::FullyRamified && c != RepClass::SteinbergRam;
}

std::string LocalRep::str() const {
  std::ostringstream os;
  os << rep_class_name(cls()) << "(p=" << p_;
  std::visit(Overloaded{
                 [&](const UnramifiedPS& d) { os << ", alpha=" << d.alpha.str() << ", beta=" << d.beta.str(); },
                 [&](const SteinbergUnr& d) { os << ", chi(p)=" << d.chi_p.str(); },
                 [&](const HalfRamifiedPS& d) {
                   os << ", chi(p)=" << d.chi_p.str() << ", omega=" << d.omega.str() << ", twist=" << d.twist.str();
                 },
                 [&](const FullyRamifiedPS& d) {
                   os << ", chi(p)=" << d.chi_p.str() << ", chi1=" << d.chi1.str() << ", chi2=" << d.chi2.str();
                 },
                 [&](const SteinbergRam& d) { os << ", chi=" << d.chi.str() << ", twist=" << d.twist.str(); },
                 [&](const Supercuspidal& d) { os << ", " << d.xi.str() << ", twist=" << d.twist.str(); },
             },
             d_);
  os << ")";
  return os.str();
}

int conductor(const LocalRep& pi) {
  return std::visit(Overloaded{
                        [](const UnramifiedPS&) { return 0; },
                        [](const SteinbergUnr&) { return 1; },
                        [](const HalfRamifiedPS& d) { return d.omega.conductor(); },
                        [](const FullyRamifiedPS& d) { return d.chi1.conductor() + d.chi2.conductor(); },
                        [](const SteinbergRam& d) { return 2 * d.chi.conductor(); },
                        [](const Supercuspidal& d) {
                          const QuadExt& e = d.xi.ext();
                          return e.f() * d.xi.conductor() + e.e() - 1;
                        },
                    },
                    pi.data());
}

LFactorDescriptor l_factor_gl2(const LocalRep& pi) {
  const Param pr = param(pi);
  std::vector<LFactor> f;
  const CycScalar qh = CycScalar::sqrt_q(pi.p()) * CycScalar(Rational(1, pi.p()));  // q^{-1/2}
  if (pr.kind == Param::PS)
    for (const auto& c : pr.chars) push_gl1(f, c, 1);
  if (pr.kind == Param::St) push_gl1(f, pr.chars[0], qh);
  return LFactorDescriptor(std::move(f));
}

CycScalar epsilon_gl2(const LocalRep& pi) {
  const Param pr = param(pi);
  switch (pr.kind) {
    case Param::PS:
      return epsilon_gl1(pr.chars[0]).at_half() * epsilon_gl1(pr.chars[1]).at_half();
    case Param::St: {
      const MultChar& chi = pr.chars[0];
      if (chi.conductor() == 0) return -chi.value_at_p();
      const CycScalar e = epsilon_gl1(chi).at_half();
      return e * e;
    }
    case Param::SC: {
      const auto& sc = std::get<Supercuspidal>(pi.data());
      return sc.twist.pow(conductor(pi)) * gamma_const(sc.xi.ext()) * epsilon_half_e(sc.xi);
    }
  }
  throw DomainError("epsilon_gl2: unsupported class");
}

MultChar central_char(const LocalRep& pi) {
  const long p = pi.p();
  return std::visit(Overloaded{
                        [&](const UnramifiedPS& d) { return MultChar::unramified(p, d.alpha * d.beta); },
                        [&](const SteinbergUnr& d) { return MultChar::unramified(p, d.chi_p * d.chi_p); },
                        [&](const HalfRamifiedPS& d) { return d.omega.with_value_at_p(d.twist * d.twist); },
                        [&](const FullyRamifiedPS& d) { return (d.chi1 * d.chi2).with_value_at_p(d.twist * d.twist); },
                        [&](const SteinbergRam& d) { return (d.chi * d.chi).with_value_at_p(d.twist * d.twist); },
                        [&](const Supercuspidal& d) {
                          return d.xi.central_character().with_value_at_p(d.twist * d.twist);
                        },
                    },
                    pi.data());
}

LocalRep dual(const LocalRep& pi) {
  const long p = pi.p();
  LocalRep::Data d = std::visit(
      Overloaded{
          [](const UnramifiedPS& d) -> LocalRep::Data { return UnramifiedPS{d.alpha.inverse(), d.beta.inverse()}; },
          [](const SteinbergUnr& d) -> LocalRep::Data { return SteinbergUnr{d.chi_p.inverse()}; },
          [](const HalfRamifiedPS& d) -> LocalRep::Data {
            return HalfRamifiedPS{d.chi_p.inverse(), d.omega.inverse(), d.twist.inverse()};
          },
          [](const FullyRamifiedPS& d) -> LocalRep::Data {
            return FullyRamifiedPS{d.chi_p.inverse(), d.chi1.inverse(), d.chi2.inverse(), d.twist.inverse()};
          },
          [](const SteinbergRam& d) -> LocalRep::Data { return SteinbergRam{d.chi.inverse(), d.twist.inverse()}; },
          [](const Supercuspidal& d) -> LocalRep::Data { return Supercuspidal{d.xi.inverse(), d.twist.inverse()}; },
      },
      pi.data());
  return LocalRep(p, std::move(d));
}

CycScalar schur_norm(int i, const CycScalar& h, const CycScalar& z, long p) {
  if (i < -1) throw DomainError("schur_norm: index below -1");
  if (i == -1) return 0;
  const CycScalar a = h * CycScalar(Rational(1, p)), b = z * CycScalar(Rational(1, p));
  CycScalar prev = 0, cur = 1;
  for (int k = 1; k <= i; ++k) {
    CycScalar next = a * cur - b * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

CycScalar schur_norm(int i, const LocalRep& pi) {
  const auto* u = pi.as<UnramifiedPS>();
  if (!u) throw DomainError("schur_norm: needs an unramified principal series");
  return schur_norm(i, CycScalar::sqrt_q(pi.p()) * (u->alpha + u->beta), u->alpha * u->beta, pi.p());
}

int PiPair::tau() const { return std::max(conductor(pi1), conductor(pi2)); }

long PiPair::nu() const {
  const long q = p();
  return conductor(pi1) == 0 && conductor(pi2) == 0 ? 1 : q * q - 1;
}

ECharacter unramified_model(const ECharacter& xi) {
  const QuadExt& ram = xi.ext();
  if (ram.kind() == ExtKind::Inert) return xi;
  if (xi.conductor() > 1) throw DomainError("unramified model needs a tame character");
  const long p = ram.p();
  const QuadExt unr(p, ExtKind::Inert);
  std::vector<EElt> units;
  for (const EElt& u : unr.residues(1))
    if (unr.is_unit(u)) units.push_back(u);
  // Over the compositum K: restriction to units gives lambda^2 = xi|_{Z_p^x} o norm, and
  // N_{K/E_unr}(sqrt d) = -d while N_{K/E_ram}(sqrt d) = d.
  const Rational d = ram.d();
  for (long e = 1; e < p * p - 1; ++e) {
    const ECharacter lambda(unr, e, CycScalar(1));
    const bool squares = std::all_of(units.begin(), units.end(), [&](const EElt& u) {
      return lambda(u).pow(2) == xi.on_base(unr.norm(u));
    });
    if (squares) return ECharacter(unr, e, xi.on_base(d) * lambda.on_base(-d).inverse());
  }
  throw DomainError("no unramified model for " + xi.str());
}

LFactorDescriptor rs_l_factor(const PiPair& pair) {
  const long p = pair.p();
  Param a = param(pair.pi1), b = param(pair.pi2);
  if (a.kind > b.kind) std::swap(a, b);  // PS < St < SC
  const CycScalar qh = CycScalar::sqrt_q(p) * CycScalar(Rational(1, p));
  std::vector<LFactor> f;
  if (a.kind == Param::PS && b.kind == Param::PS) {
    for (const auto& x : a.chars)
      for (const auto& y : b.chars) push_gl1(f, x * y, 1);
  } else if (a.kind == Param::PS && b.kind == Param::St) {
    for (const auto& x : a.chars) push_gl1(f, x * b.chars[0], qh);
  } else if (a.kind == Param::St && b.kind == Param::St) {
    // chi1 chi2 (x) (sp(3) + sp(1)): L(chi1 chi2 |.|, s) L(chi1 chi2, s)
    const MultChar c = a.chars[0] * b.chars[0];
    push_gl1(f, c, CycScalar(Rational(1, p)));
    push_gl1(f, c, 1);
  } else if (a.kind == Param::SC && b.kind == Param::SC) {
    ECharacter x = *a.xi, y = *b.xi;
    if (x.ext().kind() != y.ext().kind()) {
      x = unramified_model(x);
      y = unramified_model(y);
    }
    for (const ECharacter& th : {x * y, x * y.galois_conjugate()})
      if (th.conductor() == 0) f.push_back({th.value_at_uniformizer(), x.ext().f()});
  }
  return LFactorDescriptor(std::move(f));
}

// ---------------------------------------------------------------- JSON

Json to_json(const MultChar& chi) {
  return {{"conductor", std::to_string(chi.conductor())},
          {"exponent", std::to_string(chi.exponent())},
          {"value_at_p", rsz::to_json(chi.value_at_p())}};
}

MultChar mult_char_from_json(const Json& j, long p) {
  CycScalar at_p = j.contains("value_at_p") ? scalar_from_json(j.at("value_at_p")) : CycScalar(1);
  return MultChar(p, static_cast<int>(json_long(j.at("conductor"))), json_long(j.at("exponent")), at_p);
}

Json to_json(const LocalRep& pi) {
  Json out = {{"class", rep_class_name(pi.cls())}, {"p", std::to_string(pi.p())}};
  std::visit(Overloaded{
                 [&](const UnramifiedPS& d) {
                   out["alpha"] = rsz::to_json(d.alpha);
                   out["beta"] = rsz::to_json(d.beta);
                 },
                 [&](const SteinbergUnr& d) { out["chi_p"] = rsz::to_json(d.chi_p); },
                 [&](const HalfRamifiedPS& d) {
                   out["chi_p"] = rsz::to_json(d.chi_p);
                   out["omega"] = to_json(d.omega);
                   out["twist"] = rsz::to_json(d.twist);
                 },
                 [&](const FullyRamifiedPS& d) {
                   out["chi_p"] = rsz::to_json(d.chi_p);
                   out["chi1"] = to_json(d.chi1);
                   out["chi2"] = to_json(d.chi2);
                   out["twist"] = rsz::to_json(d.twist);
                 },
                 [&](const SteinbergRam& d) {
                   out["chi"] = to_json(d.chi);
                   out["twist"] = rsz::to_json(d.twist);
                 },
                 [&](const Supercuspidal& d) {
                   out["ext"] = ext_kind_name(d.xi.ext().kind());
                   out["xi_exponent"] = std::to_string(d.xi.exponent());
                   out["xi_at_uniformizer"] = rsz::to_json(d.xi.value_at_uniformizer());
                   out["twist"] = rsz::to_json(d.twist);
                 },
             },
             pi.data());
  return out;
}

LocalRep rep_from_json(const Json& j, long p) {
  const std::string cls = j.at("class").get<std::string>();
  auto sc = [&](const char* key, CycScalar dflt) {
    return j.contains(key) ? scalar_from_json(j.at(key)) : dflt;
  };
  if (cls == "unramified") return LocalRep(p, UnramifiedPS{sc("alpha", 1), sc("beta", 1)});
  if (cls == "steinberg") return LocalRep(p, SteinbergUnr{sc("chi_p", 1)});
  if (cls == "half_ramified")
    return LocalRep(p, HalfRamifiedPS{sc("chi_p", 1), mult_char_from_json(j.at("omega"), p), sc("twist", 1)});
  if (cls == "fully_ramified")
    return LocalRep(p, FullyRamifiedPS{sc("chi_p", 1), mult_char_from_json(j.at("chi1"), p),
                                       mult_char_from_json(j.at("chi2"), p), sc("twist", 1)});
  if (cls == "steinberg_ramified")
    return LocalRep(p, SteinbergRam{mult_char_from_json(j.at("chi"), p), sc("twist", 1)});
  if (cls == "supercuspidal") {
    const QuadExt e(p, ext_kind_from_name(j.at("ext").get<std::string>()));
    const long exp = json_long(j.at("xi_exponent"));
    ECharacter xi = j.contains("xi_at_uniformizer")
                        ? ECharacter(e, exp, scalar_from_json(j.at("xi_at_uniformizer")))
                        : ECharacter::normalized(e, exp);
    return LocalRep(p, Supercuspidal{xi, sc("twist", 1)});
  }
  throw DomainError("unknown representation class " + cls);
}

}  // namespace rsz
