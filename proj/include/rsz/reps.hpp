#pragma once

#include <string>
#include <variant>

#include "rsz/characters.hpp"
#include "rsz/json_io.hpp"
#include "rsz/laurent.hpp"

namespace rsz {

// I(alpha, beta) with unramified characters; alpha, beta are the values at p
// (numeric roots of unity or formal invertible symbols).
struct UnramifiedPS {
  CycScalar alpha, beta;
};

// St_chi, chi unramified with chi(p) = chi_p.
struct SteinbergUnr {
  CycScalar chi_p;
};

// I(chi omega, chi^{-1}) (x) twist^{v(det)}, chi unramified, omega ramified with omega(p) = 1.
struct HalfRamifiedPS {
  CycScalar chi_p;
  MultChar omega;
  CycScalar twist = CycScalar(1);
};

// I(chi1 chi, chi2 chi^{-1}) (x) twist^{v(det)}; no Whittaker table.
struct FullyRamifiedPS {
  CycScalar chi_p;
  MultChar chi1, chi2;
  CycScalar twist = CycScalar(1);
};

// St_chi with chi ramified, chi(p) = 1, then twisted; no Whittaker table.
struct SteinbergRam {
  MultChar chi;
  CycScalar twist = CycScalar(1);
};

// pi(xi) (x) twist^{v(det)}, xi regular with eta * xi|_F (p) = 1.
struct Supercuspidal {
  ECharacter xi;
  CycScalar twist = CycScalar(1);
};

// For tame xi over a ramified field, a character of the unramified quadratic field inducing the
// same two-dimensional representation (determined up to Galois conjugation). Inert xi is returned as is.
ECharacter unramified_model(const ECharacter& xi);

enum class RepClass { Unramified, SteinbergUnr, HalfRamified, FullyRamified, SteinbergRam, Supercuspidal };
std::string rep_class_name(RepClass c);

class LocalRep {
 public:
  using Data = std::variant<UnramifiedPS, SteinbergUnr, HalfRamifiedPS, FullyRamifiedPS, SteinbergRam, Supercuspidal>;

  // Validates the class normalizations; throws DomainError.
  LocalRep(long p, Data d);

  long p() const { return p_; }
  RepClass cls() const { return RepClass(d_.index()); }
  const Data& data() const { return d_; }
  template <class T>
  const T* as() const { return std::get_if<T>(&d_); }
  // Classes with an implemented new-vector table.
  bool whittaker_supported() const;
  std::string str() const;

 private:
  long p_;
  Data d_;
};

int conductor(const LocalRep& pi);
LFactorDescriptor l_factor_gl2(const LocalRep& pi);
// eps(1/2, pi, psi).
CycScalar epsilon_gl2(const LocalRep& pi);
MultChar central_char(const LocalRep& pi);
LocalRep dual(const LocalRep& pi);

// q^{-i/2} Sch_i(alpha, beta) via s_i = (h/q) s_{i-1} - (z/q) s_{i-2}, h = q^{1/2}(alpha + beta), z = alpha beta.
CycScalar schur_norm(int i, const CycScalar& h, const CycScalar& z, long p);
CycScalar schur_norm(int i, const LocalRep& pi);

struct PiPair {
  LocalRep pi1, pi2;
  int tau() const;
  long nu() const;
  long p() const { return pi1.p(); }
};

LFactorDescriptor rs_l_factor(const PiPair& pair);

Json to_json(const MultChar& chi);
Json to_json(const LocalRep& pi);
MultChar mult_char_from_json(const Json& j, long p);
LocalRep rep_from_json(const Json& j, long p);

}  // namespace rsz
