#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace rsz {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr int kInfVal = std::numeric_limits<int>::max();

// Raised when input violates a documented precondition.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int valuation(const Integer& x, long p);
// p-adic valuation of a rational; kInfVal for zero.
int valuation(const Rational& x, long p);

// p^e as an exact rational, e may be negative.
Rational ppow(long p, int e);
long ipow(long p, int e);

// x / p^{v(x)}.
Rational unit_part(const Rational& x, long p);

// Residue of a p-integral rational modulo p^k, in [0, p^k).
long residue(const Rational& x, long p, int k);

long mod_pos(long a, long m);
long mod_inverse(long a, long m);
long gcd_l(long a, long b);
long lcm_l(long a, long b);

// Canonical representative of x modulo p^e Z_p: the unique n/p^m with
// 0 <= n < p^{m+e}, or 0 when x is already in p^e Z_p.
Rational reduce_mod_pe(const Rational& x, long p, int e);

std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

}  // namespace rsz
