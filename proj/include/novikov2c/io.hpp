#pragma once

// Serialization helpers. Every floating-point value is written with 17
// significant digits so files round-trip exactly.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novikov2c/simulate.hpp"

namespace novikov2c::io {

using nlohmann::json;

/// %.17g; non-finite values print as nan, inf, -inf.
std::string fmt17(double v);

/// JSON text with doubles at 17 significant digits (non-finite become null).
std::string dump_json(const json& value, int indent = 2);
void write_json_file(const std::filesystem::path& path, const json& value);
json read_json_file(const std::filesystem::path& path);

/// One NDJSON line (no trailing newline): {"t", "L", "N", "rho", "u"}.
std::string snapshot_line(const system::Snapshot& snap);

struct StoredSnapshot {
  double t = 0.0;
  double L = 0.0;
  int N = 0;
  std::vector<double> rho;
  std::vector<double> u;
};

/// Reads every well-formed line; throws UsageError if none parse. Malformed
/// lines are skipped and counted.
std::vector<StoredSnapshot> read_snapshots(const std::filesystem::path& path,
                                           int* malformed = nullptr);

inline constexpr const char* kTruncationMarker = "# truncated";

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  /// Lines that did not parse into header.size() numbers.
  int malformed = 0;
  bool truncated = false;
  std::string truncation_note;

  int column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

std::string diagnostics_header();
std::string diagnostics_line(const diagnostics::DiagnosticsRow& row);

}  // namespace novikov2c::io
