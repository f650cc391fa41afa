// Drives the installed binary end to end: exit codes, artifacts, goldens.

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "novikov2c/io.hpp"

namespace fs = std::filesystem;
using novikov2c::io::json;

namespace {

const fs::path kBin = NOVIKOV2C_BIN;
const fs::path kSource = NOVIKOV2C_SOURCE_DIR;

int run(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + " '" + kBin.string() + "' " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string capture(const std::string& args) {
  const std::string cmd = "'" + kBin.string() + "' " + args + " 2>&1";
  std::string out;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    pclose(p);
  }
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("novikov2c_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

fs::path write_config(const fs::path& dir, const std::string& name, const json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump(2);
  return p;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace

TEST(Cli, NoArgumentsIsUsageError) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("simulate"), 1);
  EXPECT_EQ(run("frobnicate --config x.json"), 1);
}

TEST(Cli, VersionFlag) {
  EXPECT_NE(capture("--version").find("0.1.0"), std::string::npos);
}

TEST(Cli, MissingConfigFileIsUsageError) {
  const fs::path d = scratch("missing");
  EXPECT_EQ(run("simulate --config " + q(d / "nope.json") + " --out " + q(d / "o")), 1);
}

TEST(Cli, NonPowerOfTwoGridIsRejectedWithKeyPath) {
  const fs::path d = scratch("n100");
  const fs::path cfg = write_config(
      d, "bad.json",
      json::parse(R"({"grid": {"L": 20, "N": 100}, "scenario": {"type": "gaussian"}})"));
  EXPECT_EQ(run("simulate --config " + q(cfg) + " --out " + q(d / "o")), 1);
  const std::string msg = capture("simulate --config " + q(cfg) + " --out " + q(d / "o"));
  EXPECT_NE(msg.find("grid.N"), std::string::npos) << msg;
  EXPECT_FALSE(fs::exists(d / "o" / "diagnostics.csv"));
}

TEST(Cli, ZeroDataGivesZeroRows) {
  const fs::path d = scratch("zero");
  EXPECT_EQ(run("simulate --quiet --config " + q(kSource / "configs/zero.json") + " --out " +
                q(d / "o")),
            0);
  const auto t = novikov2c::io::read_csv(d / "o" / "diagnostics.csv");
  ASSERT_GT(t.rows.size(), 2u);
  EXPECT_FALSE(t.truncated);
  for (const auto& row : t.rows)
    for (std::size_t c = 1; c < row.size(); ++c) EXPECT_EQ(row[c], 0.0) << t.header[c];
  const json meta = novikov2c::io::read_json_file(d / "o" / "run_meta.json");
  EXPECT_EQ(meta["schema_version"], 1);
  EXPECT_EQ(meta["status"], "completed");
  EXPECT_TRUE(meta.contains("config"));
}

TEST(Cli, DiagnosticsMatchGoldenBytes) {
  const fs::path d = scratch("golden");
  ASSERT_EQ(run("simulate --quiet --config " + q(kSource / "tests/golden/gaussian_small.json") +
                " --out " + q(d / "o")),
            0);
  const std::string got = slurp(d / "o" / "diagnostics.csv");
  const std::string want = slurp(kSource / "tests/golden/gaussian_small_diagnostics.csv");
  ASSERT_FALSE(want.empty());
  EXPECT_EQ(got, want);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const fs::path d = scratch("determinism");
  const std::string cfg = q(kSource / "tests/golden/gaussian_small.json");
  ASSERT_EQ(run("simulate --quiet --config " + cfg + " --out " + q(d / "a")), 0);
  ASSERT_EQ(run("simulate --quiet --config " + cfg + " --out " + q(d / "b")), 0);
  for (const char* f : {"diagnostics.csv", "snapshots.ndjson"})
    EXPECT_EQ(slurp(d / "a" / f), slurp(d / "b" / f)) << f;
}

TEST(Cli, OutputRootFromEnvironment) {
  const fs::path d = scratch("env");
  ASSERT_EQ(run("simulate --quiet --config " + q(kSource / "configs/zero.json"),
                "NOVIKOV2C_OUT=" + q(d)),
            0);
  EXPECT_TRUE(fs::exists(d / "zero" / "run_meta.json"));
}

TEST(Cli, QuietSilencesOutput) {
  const fs::path d = scratch("quiet");
  const std::string out = capture("simulate --quiet --config " +
                                  q(kSource / "configs/zero.json") + " --out " + q(d / "o"));
  EXPECT_TRUE(out.empty()) << out;
}

TEST(Cli, UnderresolvedRunExitsThreeAndMarksTruncation) {
  const fs::path d = scratch("underresolved");
  const fs::path cfg = write_config(d, "steep.json", json::parse(R"({
    "grid": {"L": 20, "N": 256},
    "scenario": {"type": "antisymmetric_steep"},
    "solver": {"t_end": 2.0, "besov_diagnostics": false}})"));
  EXPECT_EQ(run("simulate --quiet --config " + q(cfg) + " --out " + q(d / "o")), 3);
  const auto t = novikov2c::io::read_csv(d / "o" / "diagnostics.csv");
  EXPECT_TRUE(t.truncated);
  const json meta = novikov2c::io::read_json_file(d / "o" / "run_meta.json");
  EXPECT_EQ(meta["status"], "underresolved");
  EXPECT_EQ(meta["truncated"], true);
}

TEST(Cli, LoweredThresholdExitsTwo) {
  const fs::path d = scratch("breaking");
  const fs::path cfg = write_config(d, "steep.json", json::parse(R"({
    "grid": {"L": 20, "N": 1024},
    "scenario": {"type": "antisymmetric_steep"},
    "solver": {"t_end": 2.0, "besov_diagnostics": false},
    "monitor": {"w_factor": 1.5, "w_offset": 0.0}})"));
  EXPECT_EQ(run("simulate --quiet --config " + q(cfg) + " --out " + q(d / "o")), 2);
  const json meta = novikov2c::io::read_json_file(d / "o" / "run_meta.json");
  EXPECT_EQ(meta["status"], "breaking-detected");
}

TEST(Cli, ReportOnEmptyDirectoryFails) {
  const fs::path d = scratch("report_empty");
  EXPECT_EQ(run("report " + q(d)), 1);
  EXPECT_EQ(run("report " + q(d / "absent")), 1);
}

TEST(Cli, ReportSummarisesRun) {
  const fs::path d = scratch("report");
  ASSERT_EQ(run("simulate --quiet --config " + q(kSource / "tests/golden/gaussian_small.json") +
                " --out " + q(d / "o")),
            0);
  EXPECT_EQ(run("report --quiet " + q(d / "o")), 0);
  const std::string csv = slurp(d / "o" / "summary.csv");
  EXPECT_EQ(csv.rfind("run,quantity,index,value", 0), 0u);
  EXPECT_NE(csv.find("E1_drift_rel"), std::string::npos) << csv;
}

TEST(Cli, SubcommandConflictsWithConfigMode) {
  const fs::path d = scratch("mode");
  const fs::path cfg = write_config(d, "m.json", json::parse(R"({
    "mode": "picard", "grid": {"L": 20, "N": 64}, "scenario": {"type": "gaussian"}})"));
  EXPECT_EQ(run("simulate --config " + q(cfg) + " --out " + q(d / "o")), 1);
}

TEST(Cli, PicardAndBesovModes) {
  const fs::path d = scratch("modes");
  ASSERT_EQ(run("picard --quiet --config " + q(kSource / "configs/picard_gaussian.json") +
                " --out " + q(d / "p")),
            0);
  EXPECT_TRUE(fs::exists(d / "p" / "picard.csv"));
  ASSERT_EQ(run("simulate --quiet --config " + q(kSource / "tests/golden/gaussian_small.json") +
                " --out " + q(d / "s")),
            0);
  const fs::path cfg = write_config(
      d, "b.json",
      json{{"mode", "besov"},
           {"besov", {{"snapshots", (d / "s" / "snapshots.ndjson").string()}}}});
  ASSERT_EQ(run("besov --quiet --config " + q(cfg) + " --out " + q(d / "b")), 0);
  const auto t = novikov2c::io::read_csv(d / "b" / "besov.csv");
  EXPECT_GT(t.rows.size() + t.malformed, 10u);
}

TEST(Cli, SweepWritesAggregate) {
  const fs::path d = scratch("sweep");
  const fs::path cfg = write_config(d, "sw.json", json::parse(R"({
    "mode": "sweep",
    "grid": {"L": 20, "N": 64},
    "solver": {"t_end": 0.05},
    "sweep": {"scenarios": [{"type": "gaussian", "name": "g",
                             "rho": {"amplitude": 0.3}, "u": {"amplitude": 0.3}}],
              "N": [64, 128], "jobs": 2}})"));
  ASSERT_EQ(run("sweep --quiet --config " + q(cfg) + " --out " + q(d / "o")), 0);
  EXPECT_TRUE(fs::exists(d / "o" / "sweep.csv"));
  EXPECT_TRUE(fs::exists(d / "o" / "run_000" / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(d / "o" / "run_001" / "diagnostics.csv"));
}
