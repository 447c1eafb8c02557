#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rsz/cli.hpp"

namespace {

int emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return rsz::kExitCompute;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rankin-Selberg zeta integral integrality toolkit"};
  app.require_subcommand(0, 1);

  std::string job_path, out_path;
  std::uint64_t seed = 0;
  long max_index = 0;
  bool paper_gauss = false;
  app.add_option("--job", job_path, "job file (JSON); '-' reads stdin");
  auto* seed_opt = app.add_option("--seed", seed, "seed for randomized batteries (overrides the job)");
  auto* max_opt = app.add_option("--max-index", max_index, "bound on enumerated cosets")->check(CLI::PositiveNumber);
  app.add_flag("--paper-gauss-convention", paper_gauss, "use the printed constant for the c = 0, v(x) = -1 Gauss sum");
  app.add_option("--out", out_path, "write the result here instead of stdout");

  auto* corpus = app.add_subcommand("corpus-check", "re-run the golden jobs and byte-compare their outputs");
  std::string corpus_dir = "corpus";
  bool update = false;
  corpus->add_option("--dir", corpus_dir, "corpus directory")->check(CLI::ExistingDirectory);
  corpus->add_flag("--update", update, "rewrite the golden outputs instead of comparing");

  CLI11_PARSE(app, argc, argv);

  if (corpus->parsed()) {
    const rsz::CorpusReport rep = rsz::corpus_check(corpus_dir, update);
    for (const auto& m : rep.mismatches) std::cerr << m;
    std::ostringstream summary;
    summary << (update ? "updated " : "checked ") << rep.checked << " golden jobs, " << rep.mismatches.size()
            << " mismatches\n";
    emit(summary.str(), out_path);
    return update || rep.ok() ? rsz::kExitOk : rsz::kExitVerdict;
  }

  if (job_path.empty()) {
    std::cerr << app.help();
    return rsz::kExitSchema;
  }
  rsz::Json job;
  try {
    if (job_path == "-") {
      job = rsz::Json::parse(std::cin);
    } else {
      std::ifstream in(job_path);
      if (!in) {
        std::cerr << "cannot read " << job_path << "\n";
        return rsz::kExitSchema;
      }
      job = rsz::Json::parse(in);
    }
  } catch (const rsz::Json::exception& e) {
    std::cerr << "job is not valid JSON: " << e.what() << "\n";
    return rsz::kExitSchema;
  }

  rsz::RunOptions opts;
  if (seed_opt->count()) opts.seed = seed;
  if (max_opt->count()) opts.max_index = max_index;
  if (paper_gauss) opts.paper_gauss_convention = true;
  const rsz::JobResult r = rsz::run_job(job, opts);
  if (const int e = emit(rsz::canonical(r.output), out_path)) return e;
  return r.exit_code;
}
