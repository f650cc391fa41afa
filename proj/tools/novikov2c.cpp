// novikov2c <subcommand> --config <path> [--out <dir>] [--quiet]
// novikov2c report <run_dir>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "novikov2c/config.hpp"
#include "novikov2c/errors.hpp"
#include "novikov2c/report.hpp"
#include "novikov2c/run.hpp"

namespace fs = std::filesystem;
using namespace novikov2c;

namespace {

fs::path output_root() {
  if (const char* env = std::getenv("NOVIKOV2C_OUT"); env && *env) return fs::path(env);
  return fs::path("novikov2c_runs");
}

fs::path resolve_out(const harness::RunConfig& cfg, const fs::path& config_path,
                     const std::string& out_flag) {
  if (!out_flag.empty()) return fs::path(out_flag);
  if (cfg.output_dir) {
    return cfg.output_dir->is_absolute() ? *cfg.output_dir : output_root() / *cfg.output_dir;
  }
  return output_root() / config_path.stem();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-component Novikov pseudospectral simulator and harmonic-analysis toolkit"};
  app.set_version_flag("--version", harness::tool_version());
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out;
    bool quiet = false;
  };
  Args args;
  const std::pair<harness::Mode, const char*> modes[] = {
      {harness::Mode::simulate, "integrate the system and record diagnostics"},
      {harness::Mode::picard, "iterate the linear transport scheme"},
      {harness::Mode::besov, "norm and paraproduct analysis of a snapshot file"},
      {harness::Mode::characteristics, "flow-map checks on a stored or fresh run"},
      {harness::Mode::holder, "data-to-solution continuity probe"},
      {harness::Mode::sweep, "grid of scenarios with an aggregate CSV"},
  };
  std::vector<std::pair<CLI::App*, harness::Mode>> commands;
  for (const auto& [mode, help] : modes) {
    CLI::App* sub = app.add_subcommand(std::string(harness::to_string(mode)), help);
    sub->add_option("--config", args.config, "JSON run configuration")->required();
    sub->add_option("--out", args.out, "output directory (default: $NOVIKOV2C_OUT/<config stem>)");
    sub->add_flag("--quiet", args.quiet, "suppress progress output");
    commands.emplace_back(sub, mode);
  }
  std::string report_dir;
  CLI::App* report = app.add_subcommand("report", "summarise a run directory");
  report->add_option("run_dir", report_dir, "run directory")->required();
  report->add_flag("--quiet", args.quiet, "do not print the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return harness::kExitUsage;
  }

  try {
    if (report->parsed()) {
      const harness::Summary s = harness::emit_report(report_dir);
      if (!args.quiet) std::cout << s.text;
      return harness::kExitCompleted;
    }
    for (const auto& [sub, mode] : commands) {
      if (!sub->parsed()) continue;
      const harness::RunConfig cfg = harness::parse_config(args.config, mode);
      const fs::path out = resolve_out(cfg, args.config, args.out);
      harness::RunOptions opts;
      opts.quiet = args.quiet;
      const harness::RunResult r = harness::run_experiment(cfg, out, opts);
      if (!args.quiet) std::cerr << r.status << ": " << r.dir.string() << '\n';
      return r.exit_code;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return harness::kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return harness::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return harness::kExitUsage;
  }
  return harness::kExitUsage;
}
