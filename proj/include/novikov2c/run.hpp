#pragma once

// Experiment execution: turns a validated RunConfig into artifact files.
//
//   simulate         diagnostics.csv, snapshots.ndjson, run_meta.json
//   picard           picard.csv, picard_final.ndjson, run_meta.json
//   besov            besov.csv, run_meta.json
//   characteristics  flowmap.csv (+ the simulate files for a fresh run), run_meta.json
//   holder           holder.csv, run_meta.json
//   sweep            run_000/ ... (simulate layout each), sweep.csv, run_meta.json

#include <filesystem>
#include <iosfwd>
#include <string>

#include "novikov2c/config.hpp"
#include "novikov2c/simulate.hpp"

namespace novikov2c::harness {

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBreaking = 2;
inline constexpr int kExitUnderresolved = 3;

int exit_code(system::HaltStatus status);

const char* tool_version();
const char* fftw_version_string();

struct RunOptions {
  bool quiet = false;
  /// Progress lines go here unless quiet; defaults to std::cerr.
  std::ostream* log = nullptr;
};

struct RunResult {
  int exit_code = kExitCompleted;
  std::string status = "completed";
  std::filesystem::path dir;
};

/// Writes the artifacts for cfg.mode into `out_dir` (created if needed).
/// Configuration problems discovered while building the data throw ConfigError.
RunResult run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir,
                         const RunOptions& options = {});

}  // namespace novikov2c::harness
