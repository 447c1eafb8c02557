#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rsz/laurent.hpp"

namespace rsz {

// Z[1/p, mu_M] extended by Q (optional), formal unitary symbols, and numeric constants.
// A Hecke pair (a, b) stands for Satake symbols entering only through the eigenvalues
// Q(a + b) and ab; membership then requires swap symmetry and a Q-degree parity match.
struct RingSpec {
  long p = 0;
  long m = 1;
  bool allow_sqrt = false;
  std::set<std::string> symbols;
  std::vector<std::pair<std::string, std::string>> hecke_pairs;
  std::vector<CycScalar> constants;
};

struct Membership {
  bool member = true;
  std::string certificate;  // reason for failure, empty on success
  bool uses_sqrt = false;   // some term carries an odd power of Q
};

Membership membership(const CycScalar& a, const RingSpec& ring);
Membership membership(const LaurentPoly& f, const RingSpec& ring);

// Swap two symbol names throughout.
CycScalar swap_symbols(const CycScalar& a, const std::string& x, const std::string& y);

}  // namespace rsz
