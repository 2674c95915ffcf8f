#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gradweil::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kInputError = 2, kInternalError = 3 };

struct Options {
  std::optional<std::string> task;  // overrides the file's "task"
  std::optional<int> bound;         // exactness degree bound
  std::optional<std::uint64_t> seed;
};

struct Outcome {
  int exit_code = kPass;
  nlohmann::json report;  // canonical machine output
  std::string text;       // human-readable output
};

const std::vector<std::string>& task_names();

Outcome run_problem(const nlohmann::json& problem, const Options& options = {});
/// Reads and runs one problem file; unreadable or malformed JSON gives
/// exit code 2.
Outcome run_file(const std::filesystem::path& path, const Options& options = {});

struct CorpusEntry {
  std::string name;
  std::string status;  // "pass", "fail", "new" (no golden yet, counts as failing), "updated"
  std::string diff;
};

struct CorpusSummary {
  std::vector<CorpusEntry> entries;
  bool ok() const;
  std::string to_text() const;
};

/// Runs every *.json problem in `dir` (golden files are NAME.expected.json)
/// and compares the canonical report byte for byte. With `update`, missing
/// or differing golden files are rewritten.
CorpusSummary run_corpus(const std::filesystem::path& dir, bool update = false);

}  // namespace gradweil::cli
