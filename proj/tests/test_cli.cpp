#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rsz/cli.hpp"

using namespace rsz;

namespace {

Json job(const std::string& command, Json payload) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"payload", std::move(payload)}};
}

const Json kTrivialChar{{"conductor", "0"}, {"exponent", "0"}};

}  // namespace

TEST_CASE("gauss-sum and l-factor jobs") {
  const JobResult g = run_job(job("gauss-sum", {{"p", "3"}, {"chi", kTrivialChar}, {"x", "1"}}));
  CHECK(g.exit_code == kExitOk);
  CHECK(g.output.at("result").at("text") == "1");
  const JobResult printed =
      run_job(job("gauss-sum", {{"p", "3"}, {"chi", kTrivialChar}, {"x", "1/3"}}), {std::nullopt, std::nullopt, true});
  CHECK(printed.output.at("result").at("text") == "-3/2");
  CHECK(run_job(job("gauss-sum", {{"p", "3"}, {"chi", kTrivialChar}, {"x", "1/3"}})).output.at("result").at("text") ==
        "-1/2");
  const Json unr{{"class", "unramified"}, {"alpha", {{"symbol", "a"}}}, {"beta", {{"symbol", "b"}}}};
  const Json st{{"class", "steinberg"}, {"chi_p", {{"symbol", "c"}}}};
  const JobResult l = run_job(job("l-factor", {{"p", "3"}, {"rep1", unr}, {"rep2", st}}));
  CHECK(l.exit_code == kExitOk);
  // L(pi_1 x chi |.|^{1/2}, s)
  CHECK(l.output.at("result").at("l_factor").at("factors").size() == 2);
}

TEST_CASE("exit codes") {
  CHECK(run_job(job("rankin", Json::object())).exit_code == kExitSchema);
  CHECK(run_job(job("gauss-sum", {{"p", "3"}, {"x", "1"}})).exit_code == kExitSchema);
  CHECK(run_job(job("gauss-sum", {{"p", "4"}, {"chi", kTrivialChar}, {"x", "1"}})).exit_code == kExitSchema);
  CHECK(run_job(job("gauss-sum", {{"p", "3"}, {"chi", kTrivialChar}, {"x", "1"}, {"extra", 1}})).exit_code ==
        kExitSchema);
  CHECK(run_job(Json::array()).exit_code == kExitSchema);
  const Json fully{{"class", "fully_ramified"},
                   {"chi1", {{"conductor", "1"}, {"exponent", "1"}}},
                   {"chi2", {{"conductor", "2"}, {"exponent", "1"}}}};
  const JobResult unsupported = run_job(job("whittaker-eval", {{"p", "3"}, {"rep", fully}, {"t", "0"}, {"k", "0"}, {"v", "1"}}));
  CHECK(unsupported.exit_code == kExitCompute);
  CHECK(unsupported.output.at("error").at("kind") == "computation");
  const Json st{{"class", "steinberg"}};
  const Json box{{"center", {"0", "0"}}, {"depths", {"0", "0"}}, {"coeff", "1"}};
  const Json id{"1", "0", "0", "1"};
  const JobResult refused =
      run_job(job("certify", {{"p", "3"}, {"rep1", st}, {"rep2", st}, {"phi", {box}}, {"g1", id}, {"g2", id}}));
  CHECK(refused.exit_code == kExitVerdict);
  CHECK(refused.output.at("result").at("refused") == true);
  Json integral = box;
  integral["coeff"] = "8";
  const JobResult certified =
      run_job(job("certify", {{"p", "3"}, {"rep1", st}, {"rep2", st}, {"phi", {integral}}, {"g1", id}, {"g2", id}}));
  CHECK(certified.exit_code == kExitOk);
  CHECK(certified.output.at("result").at("identity_check") == true);
}

TEST_CASE("output is canonical and seeded") {
  Json b = job("battery", {{"p", "3"}, {"n", "1"}, {"pairs", Json::array({Json::array({"steinberg", "steinberg"})})}});
  b["seed"] = "5";
  const std::string first = canonical(run_job(b).output);
  CHECK(first == canonical(run_job(b).output));
  CHECK(first.back() == '\n');
  RunOptions other;
  other.seed = 6;
  CHECK(first != canonical(run_job(b, other).output));
  CHECK(run_job(b, other).output.at("seed") == "6");
}

TEST_CASE("corpus check detects corrupted goldens and seed changes") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rsz_corpus_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Json b = job("battery", {{"p", "3"}, {"n", "1"}, {"pairs", Json::array({Json::array({"unramified", "steinberg"})})}});
  b["seed"] = "7";
  std::ofstream(dir / "bat.job.json") << b.dump(2);
  std::ofstream(dir / "gauss.job.json") << job("gauss-sum", {{"p", "5"}, {"chi", kTrivialChar}, {"x", "1"}}).dump();
  CHECK(corpus_check(dir, true).checked == 2);
  CHECK(corpus_check(dir).ok());
  CHECK(run_job(b).exit_code == kExitOk);

  std::ofstream(dir / "gauss.out.json", std::ios::app) << " ";
  const CorpusReport corrupted = corpus_check(dir);
  CHECK(!corrupted.ok());
  REQUIRE(corrupted.mismatches.size() == 1);
  CHECK(corrupted.mismatches[0].find("gauss") == 0);
  corpus_check(dir, true);

  b["seed"] = "8";
  std::ofstream(dir / "bat.job.json") << b.dump(2);
  const CorpusReport reseeded = corpus_check(dir);
  REQUIRE(reseeded.mismatches.size() == 1);
  CHECK(reseeded.mismatches[0].find("line") != std::string::npos);
  fs::remove_all(dir);
}
