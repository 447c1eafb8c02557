#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rsz/json_io.hpp"
#include "rsz/zeta.hpp"

namespace rsz {

enum class ClassKind { Unramified, Steinberg, HalfRamified, Supercuspidal };

std::string class_kind_name(ClassKind k);
ClassKind class_kind_from_name(const std::string& s);
// The ten unordered pairs of Whittaker-supported classes.
std::vector<std::pair<ClassKind, ClassKind>> all_class_pairs();

// Deterministic across platforms: draws use only raw engine output.
class BatteryRng {
 public:
  explicit BatteryRng(std::uint64_t seed) : eng_(seed) {}
  long uniform(long lo, long hi) { return lo + long(eng_() % std::uint64_t(hi - lo + 1)); }
  Rational unit(long p, int digits);
  Rational padic(long p, int vmin, int vmax);

 private:
  std::mt19937_64 eng_;
};

// Class representative with formal unramified parameters named after tag.
LocalRep random_formal_rep(ClassKind k, long p, const std::string& tag, BatteryRng& rng);

struct Datum {
  SchwartzFn phi;
  Mat2 g1, g2;
};
Json to_json(const Datum& d);


struct DatumDistribution {
  int max_cells = 2;
  int depth_min = -1, depth_max = 2;  // box exponents
  int center_vmin = -1, center_vmax = 1;
  int entry_vmin = -3, entry_vmax = 3;
  int related_percent = 75;  // share of data with g2 = g1 r, r near the identity
  int near_vmin = 0, near_vmax = 2;
  long max_coeff = 3;                // coefficients are n / vol(Stab) with 0 < |n| <= max_coeff
  int max_tries = 400;
};

// Rejection-samples a datum whose enumeration stays inside opts.max_index.
Datum random_integral_datum(const PiPair& pi, BatteryRng& rng, const ZetaOptions& opts,
                            const DatumDistribution& dist = {});

struct BatteryEntry {
  std::string key;
  std::string pair;
  int index = 0;
  bool identity = false;
  bool renormalized = false;
  bool members = false;
  std::string error;
  Json datum;
  bool ok() const { return identity && renormalized && members && error.empty(); }
};

struct BatteryReport {
  long p = 0;
  std::uint64_t seed = 0;
  int n = 0;
  DatumDistribution dist;
  std::vector<BatteryEntry> entries;
  int passed() const;
  int failed() const;
  Json to_json(bool with_entries = false) const;
};

struct BatteryOptions {
  long p = 3;
  int n = 100;
  std::uint64_t seed = 7;
  // Skip renormalization and membership; only the master identity is checked.
  bool identity_only = false;
  ZetaOptions zeta;
  DatumDistribution dist;
};

BatteryReport run_battery(const std::vector<std::pair<ClassKind, ClassKind>>& pairs, const BatteryOptions& opts);

}  // namespace rsz
