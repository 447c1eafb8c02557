#include "rsz/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rsz/battery.hpp"
#include "rsz/sums.hpp"
#include "rsz/whittaker.hpp"
#include "rsz/zeta.hpp"

namespace rsz {

namespace {

// ---------------------------------------------------------------- validation

enum class Kind { String, Object, Array, Bool, Integer, Rational, Scalar, Matrix, Rep, Char, Boxes, Pairs };

struct Field {
  const char* name;
  Kind kind;
  bool required;
};

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

bool is_integer(const Json& j) {
  if (j.is_number_integer()) return true;
  if (!j.is_string()) return false;
  const std::string s = j.get<std::string>();
  const std::size_t start = !s.empty() && s[0] == '-';
  return s.size() > start && std::all_of(s.begin() + long(start), s.end(), ::isdigit);
}

bool is_rational(const Json& j) {
  if (j.is_number_integer()) return true;
  if (!j.is_string()) return false;
  try {
    parse_rational(j.get<std::string>());
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void check(const Json& j, Kind kind, const std::string& path);

void check_fields(const Json& obj, const std::vector<Field>& fields, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  for (const auto& [key, v] : obj.items()) {
    const bool known = std::any_of(fields.begin(), fields.end(), [&](const Field& f) { return key == f.name; });
    if (!known) schema_fail(path + "." + key, "unknown field");
  }
  for (const auto& f : fields) {
    if (!obj.contains(f.name)) {
      if (f.required) schema_fail(path + "." + f.name, "missing");
      continue;
    }
    check(obj.at(f.name), f.kind, path + "." + f.name);
  }
}

void check(const Json& j, Kind kind, const std::string& path) {
  switch (kind) {
    case Kind::String:
      if (!j.is_string()) schema_fail(path, "expected a string");
      return;
    case Kind::Object:
      if (!j.is_object()) schema_fail(path, "expected an object");
      return;
    case Kind::Array:
      if (!j.is_array()) schema_fail(path, "expected an array");
      return;
    case Kind::Bool:
      if (!j.is_boolean()) schema_fail(path, "expected true or false");
      return;
    case Kind::Integer:
      if (!is_integer(j)) schema_fail(path, "expected an integer string");
      return;
    case Kind::Rational:
      if (!is_rational(j)) schema_fail(path, "expected a rational string");
      return;
    case Kind::Scalar:
      if (!is_rational(j) && !j.is_object()) schema_fail(path, "expected a rational string or scalar object");
      return;
    case Kind::Matrix:
      if (!j.is_array() || j.size() != 4) schema_fail(path, "expected [a, b, c, d]");
      for (std::size_t i = 0; i < 4; ++i) check(j[i], Kind::Rational, path + "[" + std::to_string(i) + "]");
      return;
    case Kind::Rep:
      if (!j.is_object() || !j.contains("class") || !j.at("class").is_string())
        schema_fail(path, "expected a representation with a class");
      return;
    case Kind::Char:
      check_fields(j, {{"conductor", Kind::Integer, true}, {"exponent", Kind::Integer, true},
                       {"value_at_p", Kind::Scalar, false}},
                   path);
      return;
    case Kind::Boxes:
      if (!j.is_array()) schema_fail(path, "expected a list of boxes");
      for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (j[i].is_object() && j[i].contains("lattice")) {
          check_fields(j[i], {{"offset", Kind::Array, true}, {"lattice", Kind::Matrix, true}, {"coeff", Kind::Scalar, true}},
                       at);
          if (j[i].at("offset").size() != 2) schema_fail(at + ".offset", "expected two entries");
          for (const auto& x : j[i].at("offset")) check(x, Kind::Rational, at + ".offset");
        } else {
          check_fields(j[i], {{"center", Kind::Array, true}, {"depths", Kind::Array, true}, {"coeff", Kind::Scalar, true}},
                       at);
          if (j[i].at("center").size() != 2) schema_fail(at + ".center", "expected two entries");
          if (j[i].at("depths").size() != 2) schema_fail(at + ".depths", "expected two entries");
          for (const auto& x : j[i].at("center")) check(x, Kind::Rational, at + ".center");
          for (const auto& x : j[i].at("depths")) check(x, Kind::Integer, at + ".depths");
        }
      }
      return;
    case Kind::Pairs:
      if (j.is_string()) {
        if (j.get<std::string>() != "all") schema_fail(path, "expected \"all\" or a list of class pairs");
        return;
      }
      if (!j.is_array() || j.empty()) schema_fail(path, "expected \"all\" or a list of class pairs");
      for (const auto& pr : j) {
        if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
          schema_fail(path, "expected [class, class]");
        for (const auto& name : pr) {
          try {
            class_kind_from_name(name.get<std::string>());
          } catch (const DomainError& e) {
            schema_fail(path, e.what());
          }
        }
      }
      return;
  }
}

const std::map<std::string, std::vector<Field>>& payload_fields() {
  static const std::vector<Field> datum{{"p", Kind::Integer, true},   {"rep1", Kind::Rep, true},
                                        {"rep2", Kind::Rep, true},    {"phi", Kind::Boxes, true},
                                        {"g1", Kind::Matrix, true},   {"g2", Kind::Matrix, true},
                                        {"ring", Kind::Object, false}};
  static const std::map<std::string, std::vector<Field>> m{
      {"gauss-sum",
       {{"p", Kind::Integer, true}, {"chi", Kind::Char, true}, {"x", Kind::Rational, true}, {"mode", Kind::String, false}}},
      {"partial-gauss-sum",
       {{"p", Kind::Integer, true},
        {"chi", Kind::Char, true},
        {"l", Kind::Integer, true},
        {"x", Kind::Rational, true},
        {"mode", Kind::String, false}}},
      {"epsilon", {{"p", Kind::Integer, true}, {"chi", Kind::Char, false}, {"rep", Kind::Rep, false}}},
      {"whittaker-eval",
       {{"p", Kind::Integer, true},
        {"rep", Kind::Rep, true},
        {"g", Kind::Matrix, false},
        {"t", Kind::Integer, false},
        {"k", Kind::Integer, false},
        {"v", Kind::Rational, false},
        {"psi_sign", Kind::Integer, false}}},
      {"l-factor", {{"p", Kind::Integer, true}, {"rep1", Kind::Rep, true}, {"rep2", Kind::Rep, false}}},
      {"zeta", {datum.begin(), datum.end() - 1}},
      {"certify", datum},
      {"trilinear", datum},
      {"battery",
       {{"p", Kind::Integer, false},
        {"n", Kind::Integer, false},
        {"pairs", Kind::Pairs, false},
        {"identity_only", Kind::Bool, false},
        {"with_entries", Kind::Bool, false}}},
  };
  return m;
}

// ---------------------------------------------------------------- parsing

// Rejected parameters are input errors, not computation errors.
LocalRep parse_rep(const Json& pl, const char* key, long p) {
  try {
    return rep_from_json(pl.at(key), p);
  } catch (const DomainError& e) {
    throw SchemaError(std::string("payload.") + key + ": " + e.what());
  }
}

MultChar parse_char(const Json& pl, const char* key, long p) {
  try {
    return mult_char_from_json(pl.at(key), p);
  } catch (const DomainError& e) {
    throw SchemaError(std::string("payload.") + key + ": " + e.what());
  }
}

Mat2 matrix_from_json(const Json& j) {
  return {json_rational(j[0]), json_rational(j[1]), json_rational(j[2]), json_rational(j[3])};
}

SchwartzFn phi_from_json(const Json& j, long p) {
  SchwartzFn phi(p);
  for (const auto& b : j) {
    if (b.contains("lattice")) {
      phi.add_cell(Cell{json_rational(b.at("offset")[0]), json_rational(b.at("offset")[1]),
                        matrix_from_json(b.at("lattice")), scalar_from_json(b.at("coeff"))});
    } else {
      phi.add_box(json_rational(b.at("center")[0]), json_rational(b.at("center")[1]),
                  int(json_long(b.at("depths")[0])), int(json_long(b.at("depths")[1])), scalar_from_json(b.at("coeff")));
    }
  }
  return phi;
}

SumMode mode_from_json(const Json& payload) {
  const std::string m = payload.value("mode", "closed");
  if (m == "closed") return SumMode::Closed;
  if (m == "brute") return SumMode::Brute;
  throw SchemaError("payload.mode: expected \"closed\" or \"brute\"");
}

long prime_from_json(const Json& payload) {
  const long p = json_long(payload.at("p"));
  if (p < 3 || p % 2 == 0) throw SchemaError("payload.p: expected an odd prime");
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw SchemaError("payload.p: expected an odd prime");
  return p;
}

Json membership_json(const Membership& m) {
  Json j{{"member", m.member}, {"uses_sqrt", m.uses_sqrt}};
  if (!m.certificate.empty()) j["certificate"] = m.certificate;
  return j;
}

Json datum_report_json(const IntegralDatumReport& r) {
  Json j{{"stab_volume", to_string(r.stab_volume)},
         {"required_ideal_generator", to_string(r.required_ideal_generator)},
         {"is_integral", r.is_integral}};
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

struct DatumInput {
  PiPair pi;
  SchwartzFn phi;
  Mat2 g1, g2;
  RingSpec ring;
};

DatumInput datum_from_json(const Json& payload) {
  const long p = prime_from_json(payload);
  DatumInput in{{parse_rep(payload, "rep1", p), parse_rep(payload, "rep2", p)},
                phi_from_json(payload.at("phi"), p),
                matrix_from_json(payload.at("g1")),
                matrix_from_json(payload.at("g2")),
                {}};
  if (in.g1.det() == 0) throw SchemaError("payload.g1: singular matrix");
  if (in.g2.det() == 0) throw SchemaError("payload.g2: singular matrix");
  in.ring = theorem_ring(in.pi);
  if (payload.contains("ring")) {
    const Json& r = payload.at("ring");
    check_fields(r, {{"allow_sqrt", Kind::Bool, false}, {"extra_symbols", Kind::Array, false}}, "payload.ring");
    in.ring.allow_sqrt = r.value("allow_sqrt", in.ring.allow_sqrt);
    if (r.contains("extra_symbols"))
      for (const auto& s : r.at("extra_symbols")) {
        if (!s.is_string()) throw SchemaError("payload.ring.extra_symbols: expected strings");
        in.ring.symbols.insert(s.get<std::string>());
      }
  }
  return in;
}

// ---------------------------------------------------------------- commands

struct Context {
  ZetaOptions zeta;
  GaussConvention gauss = GaussConvention::Direct;
  std::uint64_t seed = 7;
};

// Every handler parses first (SchemaError) and then computes (anything else is a computation error).
using Handler = std::function<JobResult(const Json&, const Context&)>;

JobResult ok(Json result) { return {std::move(result), kExitOk}; }

JobResult run_gauss(const Json& pl, const Context& ctx) {
  const long p = prime_from_json(pl);
  const MultChar chi = parse_char(pl, "chi", p);
  const Rational x = json_rational(pl.at("x"));
  const SumMode mode = mode_from_json(pl);
  const SumValue v = gauss(chi, x, mode, ctx.gauss);
  return ok({{"value", to_json(v.value)},
             {"text", v.value.str()},
             {"provenance", sum_mode_name(v.provenance)},
             {"convention", ctx.gauss == GaussConvention::Printed ? "printed" : "direct"}});
}

JobResult run_partial_gauss(const Json& pl, const Context&) {
  const long p = prime_from_json(pl);
  const MultChar chi = parse_char(pl, "chi", p);
  const long l = json_long(pl.at("l"));
  if (l < 1) throw SchemaError("payload.l: expected l >= 1");
  const SumValue v = partial_gauss(chi, int(l), json_rational(pl.at("x")), mode_from_json(pl));
  return ok({{"value", to_json(v.value)}, {"text", v.value.str()}, {"provenance", sum_mode_name(v.provenance)}});
}

JobResult run_epsilon(const Json& pl, const Context&) {
  const long p = prime_from_json(pl);
  if (pl.contains("chi") == pl.contains("rep")) throw SchemaError("payload: expected exactly one of chi, rep");
  if (pl.contains("chi")) {
    const GL1Epsilon e = epsilon_gl1(parse_char(pl, "chi", p));
    return ok({{"constant", to_json(e.constant)},
               {"x_power", std::to_string(e.x_power)},
               {"at_half", to_json(e.at_half())},
               {"text", e.at_half().str()}});
  }
  const LocalRep pi = parse_rep(pl, "rep", p);
  const CycScalar e = epsilon_gl2(pi);
  return ok({{"at_half", to_json(e)}, {"text", e.str()}, {"conductor", std::to_string(conductor(pi))}});
}

JobResult run_whittaker(const Json& pl, const Context&) {
  const long p = prime_from_json(pl);
  const LocalRep pi = parse_rep(pl, "rep", p);
  const int sign = int(json_long(pl.value("psi_sign", Json("1"))));
  if (sign != 1 && sign != -1) throw SchemaError("payload.psi_sign: expected 1 or -1");
  const bool coset = pl.contains("t") || pl.contains("k") || pl.contains("v");
  if (coset == pl.contains("g")) throw SchemaError("payload: expected either g or t, k, v");
  if (coset) {
    if (!pl.contains("t") || !pl.contains("k") || !pl.contains("v")) throw SchemaError("payload: t, k, v go together");
    if (sign != 1) throw SchemaError("payload.psi_sign: coset values are in the psi model");
    const int t = int(json_long(pl.at("t"))), k = int(json_long(pl.at("k")));
    const Rational v = json_rational(pl.at("v"));
    const WhittakerValue w = eval_coset(pi, t, k, v);
    return ok({{"value", to_json(w.value)}, {"text", w.value.str()}, {"in_support", w.in_support}});
  }
  const Mat2 g = matrix_from_json(pl.at("g"));
  if (g.det() == 0) throw SchemaError("payload.g: singular matrix");
  const CycScalar w = eval_general(pi, g, sign);
  return ok({{"value", to_json(w)}, {"text", w.str()}});
}

JobResult run_l_factor(const Json& pl, const Context&) {
  const long p = prime_from_json(pl);
  const LocalRep pi1 = parse_rep(pl, "rep1", p);
  const LFactorDescriptor l = pl.contains("rep2") ? rs_l_factor({pi1, parse_rep(pl, "rep2", p)}) : l_factor_gl2(pi1);
  return ok({{"l_factor", to_json(l)}, {"inverse_poly", to_json(l.inverse_poly())}, {"text", l.str()}});
}

JobResult run_zeta(const Json& pl, const Context& ctx) {
  const DatumInput in = datum_from_json(pl);
  const ZetaValue z = zeta_unfolded(in.phi, in.g1, in.g2, in.pi, ctx.zeta);
  return ok({{"zeta", to_json(z)}});
}

Json certify_json(const CertifyResult& r, const RingSpec& ring) {
  Json verdicts = Json::array();
  for (const auto& [deg, m] : r.verdicts) {
    Json v = membership_json(m);
    v["x_pow"] = std::to_string(deg);
    verdicts.push_back(v);
  }
  return {{"phi_poly", to_json(r.phi_poly)},
          {"verdicts", verdicts},
          {"identity_check", r.identity_check},
          {"l_factor", to_json(r.l_factor)},
          {"zeta", to_json(r.z)},
          {"lambda", to_json(r.lambda_value)},
          {"datum", datum_report_json(r.datum)},
          {"ring", to_json(ring)}};
}

JobResult run_certify(const Json& pl, const Context& ctx) {
  const DatumInput in = datum_from_json(pl);
  try {
    const CertifyResult r = certify(in.phi, in.g1, in.g2, in.pi, in.ring, ctx.zeta);
    return {certify_json(r, in.ring), r.ok() ? kExitOk : kExitVerdict};
  } catch (const NotIntegralDatum& e) {
    return {{{"refused", true}, {"datum", datum_report_json(e.report)}}, kExitVerdict};
  } catch (const PoleMismatch& e) {
    return {{{"pole_mismatch", e.what()}}, kExitVerdict};
  }
}

JobResult run_trilinear(const Json& pl, const Context& ctx) {
  const DatumInput in = datum_from_json(pl);
  try {
    const CycScalar v = trilinear(in.phi, in.g1, in.g2, in.pi, ctx.zeta);
    const Membership m = membership(v, in.ring);
    return {{{"value", to_json(v)}, {"text", v.str()}, {"membership", membership_json(m)}, {"ring", to_json(in.ring)}},
            m.member ? kExitOk : kExitVerdict};
  } catch (const NotIntegralDatum& e) {
    return {{{"refused", true}, {"datum", datum_report_json(e.report)}}, kExitVerdict};
  } catch (const PoleMismatch& e) {
    return {{{"pole_mismatch", e.what()}}, kExitVerdict};
  }
}

JobResult run_battery_job(const Json& pl, const Context& ctx) {
  BatteryOptions opts;
  opts.p = pl.contains("p") ? prime_from_json(pl) : 3;
  opts.n = int(json_long(pl.value("n", Json("100"))));
  if (opts.n < 1) throw SchemaError("payload.n: expected n >= 1");
  opts.seed = ctx.seed;
  opts.identity_only = pl.value("identity_only", false);
  opts.zeta = ctx.zeta;
  std::vector<std::pair<ClassKind, ClassKind>> pairs;
  if (!pl.contains("pairs") || pl.at("pairs").is_string()) {
    pairs = all_class_pairs();
  } else {
    for (const auto& pr : pl.at("pairs"))
      pairs.emplace_back(class_kind_from_name(pr[0].get<std::string>()), class_kind_from_name(pr[1].get<std::string>()));
  }
  const BatteryReport rep = run_battery(pairs, opts);
  return {rep.to_json(pl.value("with_entries", false)), rep.failed() == 0 ? kExitOk : kExitVerdict};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"gauss-sum", run_gauss},   {"partial-gauss-sum", run_partial_gauss},
      {"epsilon", run_epsilon},   {"whittaker-eval", run_whittaker},
      {"l-factor", run_l_factor}, {"zeta", run_zeta},
      {"certify", run_certify},   {"trilinear", run_trilinear},
      {"battery", run_battery_job},
  };
  return h;
}

Json envelope(const Json& job) {
  Json out{{"schema", kSchemaVersion}};
  if (job.is_object() && job.contains("command") && job.at("command").is_string()) out["command"] = job.at("command");
  return out;
}

JobResult failure(const Json& job, const char* kind, const std::string& msg, int code) {
  Json out = envelope(job);
  out["error"] = {{"kind", kind}, {"message", msg}};
  out["exit_code"] = std::to_string(code);
  return {out, code};
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : payload_fields()) out.push_back(k);
    return out;
  }();
  return c;
}

void validate_job(const Json& job) {
  check_fields(job,
               {{"schema", Kind::String, false},
                {"command", Kind::String, true},
                {"payload", Kind::Object, true},
                {"seed", Kind::Integer, false},
                {"options", Kind::Object, false}},
               "job");
  if (job.contains("schema") && job.at("schema") != kSchemaVersion)
    schema_fail("job.schema", std::string("expected ") + kSchemaVersion);
  const std::string cmd = job.at("command").get<std::string>();
  const auto it = payload_fields().find(cmd);
  if (it == payload_fields().end()) schema_fail("job.command", "unknown command '" + cmd + "'");
  check_fields(job.at("payload"), it->second, "payload");
  if (job.contains("options"))
    check_fields(job.at("options"), {{"max_index", Kind::Integer, false}, {"paper_gauss_convention", Kind::Bool, false}},
                 "job.options");
  if (job.contains("seed") && json_long(job.at("seed")) < 0) schema_fail("job.seed", "expected a nonnegative integer");
}

JobResult run_job(const Json& job, const RunOptions& overrides) {
  try {
    validate_job(job);
  } catch (const SchemaError& e) {
    return failure(job, "schema", e.what(), kExitSchema);
  }
  Context ctx;
  const Json opts = job.value("options", Json::object());
  if (opts.contains("max_index")) ctx.zeta.max_index = json_long(opts.at("max_index"));
  if (opts.value("paper_gauss_convention", false)) ctx.gauss = GaussConvention::Printed;
  if (job.contains("seed")) ctx.seed = std::uint64_t(json_long(job.at("seed")));
  if (overrides.max_index) ctx.zeta.max_index = *overrides.max_index;
  if (overrides.paper_gauss_convention)
    ctx.gauss = *overrides.paper_gauss_convention ? GaussConvention::Printed : GaussConvention::Direct;
  if (overrides.seed) ctx.seed = *overrides.seed;

  const std::string cmd = job.at("command").get<std::string>();
  JobResult r;
  try {
    r = handlers().at(cmd)(job.at("payload"), ctx);
  } catch (const SchemaError& e) {
    return failure(job, "schema", e.what(), kExitSchema);
  } catch (const Json::exception& e) {
    return failure(job, "schema", e.what(), kExitSchema);
  } catch (const std::exception& e) {
    return failure(job, "computation", e.what(), kExitCompute);
  }
  Json out = envelope(job);
  out["result"] = std::move(r.output);
  out["exit_code"] = std::to_string(r.exit_code);
  if (cmd == "battery") out["seed"] = std::to_string(ctx.seed);
  return {out, r.exit_code};
}

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

namespace {

std::string read_file(const std::filesystem::path& f) {
  std::ifstream in(f, std::ios::binary);
  if (!in) throw DomainError("cannot read " + f.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// First differing line with a little context.
std::string diff_report(const std::string& name, const std::string& want, const std::string& got) {
  const auto a = split_lines(want), b = split_lines(got);
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  std::ostringstream os;
  os << name << ": output differs from golden at line " << i + 1 << "\n";
  for (std::size_t k = i; k < std::min(a.size(), i + 3); ++k) os << "- " << a[k] << "\n";
  for (std::size_t k = i; k < std::min(b.size(), i + 3); ++k) os << "+ " << b[k] << "\n";
  if (a.size() != b.size()) os << "  (" << a.size() << " golden lines, " << b.size() << " new lines)\n";
  return os.str();
}

}  // namespace

CorpusReport corpus_check(const std::filesystem::path& dir, bool update) {
  namespace fs = std::filesystem;
  const std::string suffix = ".job.json";
  std::vector<fs::path> jobs;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string n = e.path().filename().string();
    if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0)
      jobs.push_back(e.path());
  }
  std::sort(jobs.begin(), jobs.end());
  CorpusReport rep;
  for (const auto& path : jobs) {
    const std::string file = path.filename().string();
    const std::string name = file.substr(0, file.size() - suffix.size());
    const fs::path golden = dir / (name + ".out.json");
    Json job;
    try {
      job = Json::parse(read_file(path));
    } catch (const Json::exception& e) {
      rep.mismatches.push_back(name + ": job file is not JSON: " + e.what());
      continue;
    }
    const std::string got = canonical(run_job(job).output);
    ++rep.checked;
    if (update) {
      std::ofstream(golden, std::ios::binary) << got;
      continue;
    }
    if (!fs::exists(golden)) {
      rep.mismatches.push_back(name + ": golden file missing");
      continue;
    }
    const std::string want = read_file(golden);
    if (want != got) rep.mismatches.push_back(diff_report(name, want, got));
  }
  return rep;
}

}  // namespace rsz
