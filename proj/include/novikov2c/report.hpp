#pragma once

// Per-run summary tables: summary.txt for people and a long-format
// summary.csv (run, quantity, index, value) for plotting.

#include <filesystem>
#include <string>
#include <vector>

namespace novikov2c::harness {

struct SummaryEntry {
  std::string run;
  std::string quantity;
  std::string index;  ///< iterate or row index; empty when scalar
  std::string value;
};

struct Summary {
  std::vector<SummaryEntry> entries;
  /// Missing or unreadable pieces, reported instead of aborting.
  std::vector<std::string> gaps;
  std::string text;
};

/// Summarises a run directory (and run_### subdirectories of a sweep) and
/// writes summary.txt and summary.csv into it. Throws UsageError when the
/// directory is missing or empty.
Summary emit_report(const std::filesystem::path& run_dir);

}  // namespace novikov2c::harness
