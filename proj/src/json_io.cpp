#include "rsz/json_io.hpp"

namespace rsz {

long json_long(const Json& j) {
  if (j.is_number_integer()) return j.get<long>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw DomainError("not an integer: " + s);
    return v;
  }
  throw DomainError("expected an integer string");
}

Rational json_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw DomainError("expected a rational string");
}

Json to_json(const CycScalar& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) {
    Json sym = Json::object();
    for (const auto& [n, e] : t.mono.factors()) sym[n] = std::to_string(e);
    terms.push_back({{"zeta_exp", std::to_string(t.zeta)},
                     {"q_half_deg", std::to_string(t.qdeg)},
                     {"symbols", sym},
                     {"num", Integer(t.coeff.get_num()).get_str()},
                     {"den", Integer(t.coeff.get_den()).get_str()}});
  }
  Json out = {{"level", std::to_string(s.level())}, {"terms", terms}};
  if (s.prime()) out["prime"] = std::to_string(s.prime());
  return out;
}

CycScalar scalar_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return CycScalar(json_rational(j));
  // shorthands: {"root": [n, k]} for zeta_n^k, {"symbol": name}
  if (j.contains("root")) return CycScalar::zeta(json_long(j.at("root").at(0)), json_long(j.at("root").at(1)));
  if (j.contains("symbol")) return CycScalar::symbol(j.at("symbol").get<std::string>());
  long level = json_long(j.at("level"));
  long p = j.contains("prime") ? json_long(j.at("prime")) : 0;
  std::vector<CycScalar::Term> terms;
  for (const auto& t : j.at("terms")) {
    CycScalar::Term term;
    term.zeta = json_long(t.at("zeta_exp"));
    term.qdeg = static_cast<int>(json_long(t.value("q_half_deg", Json("0"))));
    if (t.contains("symbols"))
      for (const auto& [n, e] : t.at("symbols").items())
        term.mono = term.mono * Monomial::symbol(n, static_cast<int>(json_long(e)));
    Rational c(Integer(json_rational(t.at("num")).get_num()), Integer(json_rational(t.at("den")).get_num()));
    c.canonicalize();
    term.coeff = c;
    if (term.qdeg == 1 && p == 0) throw DomainError("scalar with Q term needs a prime");
    terms.push_back(std::move(term));
  }
  return CycScalar::from_terms(level, p, terms);
}

Json to_json(const LaurentPoly& f) {
  Json terms = Json::array();
  for (const auto& [n, c] : f.coeffs()) terms.push_back({{"x_pow", std::to_string(n)}, {"coeff", to_json(c)}});
  return {{"terms", terms}};
}

LaurentPoly poly_from_json(const Json& j) {
  LaurentPoly f;
  for (const auto& t : j.at("terms")) f.add(static_cast<int>(json_long(t.at("x_pow"))), scalar_from_json(t.at("coeff")));
  return f;
}

Json to_json(const LFactorDescriptor& l) {
  Json fs = Json::array();
  for (const auto& x : l.factors()) fs.push_back({{"c", to_json(x.c)}, {"d", std::to_string(x.d)}});
  return {{"factors", fs}};
}

LFactorDescriptor lfactor_from_json(const Json& j) {
  std::vector<LFactor> f;
  for (const auto& x : j.at("factors")) f.push_back({scalar_from_json(x.at("c")), static_cast<int>(json_long(x.at("d")))});
  return LFactorDescriptor(std::move(f));
}

Json to_json(const ZetaValue& z) { return {{"l_part", to_json(z.l_part)}, {"poly", to_json(z.poly)}}; }

ZetaValue zeta_value_from_json(const Json& j) {
  return {lfactor_from_json(j.at("l_part")), poly_from_json(j.at("poly"))};
}

Json to_json(const RingSpec& r) {
  Json pairs = Json::array();
  for (const auto& [a, b] : r.hecke_pairs) pairs.push_back({a, b});
  Json consts = Json::array();
  for (const auto& c : r.constants) consts.push_back(to_json(c));
  return {{"p", std::to_string(r.p)},
          {"m", std::to_string(r.m)},
          {"allow_sqrt", r.allow_sqrt},
          {"symbols", Json(std::vector<std::string>(r.symbols.begin(), r.symbols.end()))},
          {"hecke_pairs", pairs},
          {"constants", consts}};
}

RingSpec ring_from_json(const Json& j) {
  RingSpec r;
  r.p = json_long(j.at("p"));
  r.m = json_long(j.at("m"));
  r.allow_sqrt = j.value("allow_sqrt", false);
  if (j.contains("symbols"))
    for (const auto& s : j.at("symbols")) r.symbols.insert(s.get<std::string>());
  if (j.contains("hecke_pairs"))
    for (const auto& pr : j.at("hecke_pairs")) r.hecke_pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
  if (j.contains("constants"))
    for (const auto& c : j.at("constants")) r.constants.push_back(scalar_from_json(c));
  return r;
}

}  // namespace rsz
