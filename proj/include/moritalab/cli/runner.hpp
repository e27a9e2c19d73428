#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "moritalab/cli/spec_file.hpp"

namespace moritalab::cli {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct RunOptions {
  double tol = numeric::kDefaultTolerance;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Fusion ambient cap (dim H * dim K).
  std::int64_t max_dim = 10'000;
  /// Ring order cap for isomorphism searches.
  std::int64_t max_order = std::int64_t{1} << 16;
  bool timings = true;
};

enum class TaskStatus { Pass, Fail, Refuted, Error };
std::string to_string(TaskStatus s);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

/// Runs every task of a loaded spec. Each task is isolated: library errors
/// become status Error with the error kind recorded.
Json run_tasks(const SpecFile& spec, const RunOptions& options);

/// Full report for raw input text. Parse failures produce a report with a
/// top-level "error" and no tasks.
struct RunOutcome {
  Json report;
  int exit_code = 0;  // 0 all Pass, 1 some task not Pass, 2 parse error
};
RunOutcome run_text(const std::string& text, const RunOptions& options);

/// Built-in spec files: "matrix-ring-pair", "mn-vs-c", "non-tracial-fusion".
std::optional<Json> demo_spec(const std::string& name);
const std::vector<std::string>& demo_names();

}  // namespace moritalab::cli
