#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rsz/json_io.hpp"

namespace rsz {

inline constexpr const char* kSchemaVersion = "rsz/v1";

enum ExitCode { kExitOk = 0, kExitVerdict = 1, kExitSchema = 2, kExitCompute = 3 };

struct SchemaError : DomainError {
  using DomainError::DomainError;
};

// Command-line overrides; a job file may carry the same fields under "options".
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<long> max_index;
  std::optional<bool> paper_gauss_convention;
};

struct JobResult {
  Json output;
  int exit_code = kExitOk;
};

const std::vector<std::string>& job_commands();
// Throws SchemaError with the offending path.
void validate_job(const Json& job);
JobResult run_job(const Json& job, const RunOptions& overrides = {});
// Byte-stable rendering: sorted keys, two-space indent, trailing newline.
std::string canonical(const Json& j);

// Golden files: NAME.job.json with NAME.out.json next to it.
struct CorpusReport {
  int checked = 0;
  std::vector<std::string> mismatches;  // one diff report per failing job
  bool ok() const { return checked > 0 && mismatches.empty(); }
};
CorpusReport corpus_check(const std::filesystem::path& dir, bool update = false);

}  // namespace rsz
