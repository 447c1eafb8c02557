#pragma once

#include <optional>
#include <string>

#include "rsz/characters.hpp"
#include "rsz/cyclotomic.hpp"

namespace rsz {

// Haar measure normalizations shared by every sum below.
namespace measure {
// d^x y on Q_p^x: vol(O^x) = 1.
inline Rational mult_units() { return 1; }
// dx on Q_p: vol(O) = 1.
inline Rational additive_o() { return 1; }
// d_E x on E: vol(O_E) = q^{(1-e)/2}.
CycScalar additive_oe(const QuadExt& E);
}  // namespace measure

enum class SumMode { Closed, Brute };
std::string sum_mode_name(SumMode m);

// Constant for the c(chi) = 0, v(x) = -1 Gauss sum. Direct summation gives -1/(q-1);
// Printed reproduces the table constant -q/(q-1) for comparison runs.
enum class GaussConvention { Direct, Printed };

struct SumValue {
  CycScalar value;
  SumMode provenance = SumMode::Brute;
};

// int_{O^x} chi(y) psi(x y) d^x y. Only chi on units matters.
CycScalar gauss_brute(const MultChar& chi, const Rational& x);
CycScalar gauss_closed(const MultChar& chi, const Rational& x,
                       GaussConvention conv = GaussConvention::Direct);
SumValue gauss(const MultChar& chi, const Rational& x, SumMode mode,
               GaussConvention conv = GaussConvention::Direct);

// int_{1 + p^l O} chi(y) psi(x y) d^x y, l >= 1.
CycScalar partial_gauss_brute(const MultChar& chi, int l, const Rational& x);
CycScalar partial_gauss_closed(const MultChar& chi, int l, const Rational& x);
SumValue partial_gauss(const MultChar& chi, int l, const Rational& x, SumMode mode);

// eps(s, chi, psi) = constant * X^{x_power}, X = q^{-s}.
struct GL1Epsilon {
  CycScalar constant;
  int x_power = 0;
  long p = 0;
  CycScalar at_half() const;  // X -> q^{-1/2}
};
GL1Epsilon epsilon_gl1(const MultChar& chi);

// eps(1/2, xi, psi o Tr) for a character of E^x.
CycScalar epsilon_half_e(const ECharacter& xi);

// Local constant with eps(s, pi(xi)) = gamma * eps(s, xi, psi o Tr).
CycScalar gamma_const(const QuadExt& E);

// int_{O_E^x} xi(x) psi(Tr(A x) + B Nr(x)) d_E x, summed over O_E^x mod p_E^M.
// M defaults to the smallest level at which the integrand is constant on classes.
CycScalar k_sum(const ECharacter& xi, const EElt& a, const Rational& b,
                std::optional<int> level = std::nullopt);
int k_sum_level(const ECharacter& xi, const EElt& a, const Rational& b);

// Split analogue: int int chi1(x1) chi2(x2) psi(p^{-a1} x1 + p^{-a2} x2 + v p^{-a} x1 x2) d^x x1 d^x x2.
CycScalar k_split(const MultChar& chi1, const MultChar& chi2, int a1, int a2,
                  const Rational& v, int a);

// int_{O^x} psi((A x + B x^{-1}) p^{-m}) d^x x, m >= 1.
CycScalar s_sum(long p, const Rational& a, const Rational& b, int m);

}  // namespace rsz
