#pragma once

// Run configuration: a strict JSON schema with documented defaults.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "novikov2c/scenario.hpp"
#include "novikov2c/simulate.hpp"

namespace novikov2c::harness {

using nlohmann::json;

enum class Mode { simulate, picard, besov, characteristics, holder, sweep };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

inline constexpr int kSchemaVersion = 1;

struct GridConfig {
  double L = 0.0;
  int N = 0;
};

struct PicardConfig {
  int n_max = 12;
  std::optional<double> horizon;  ///< "auto" when absent
  double horizon_factor = 0.1;
  std::optional<double> dt;
  double convergence_floor = 1e-12;
  double divergence_factor = 1e6;
};

struct CharacteristicsConfig {
  /// Seeds uniform on [first, last]; defaults to the middle half of the domain.
  std::optional<double> first;
  std::optional<double> last;
  int count = 64;
  int substeps = 1;
  double rho_cutoff = 1e-8;
  /// Stored run directory to analyse; a fresh run is made when absent.
  std::optional<std::filesystem::path> run;
};

struct HolderConfig {
  std::vector<double> epsilons = {1e-6, 1e-5, 1e-4, 1e-3};
  double horizon = 0.5;
  double s_prime = 0.5;
  double s = 1.5;
  /// Perturbation direction; defaults to the base data itself.
  std::optional<scenario::ScenarioSpec> direction;
};

struct BesovIndexConfig {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
};

struct BesovConfig {
  std::filesystem::path snapshots;
  /// Snapshot line index; negative counts from the end (-1 is the last).
  int snapshot = -1;
  std::vector<BesovIndexConfig> indices;
};

struct SweepConfig {
  std::vector<scenario::ScenarioSpec> scenarios;
  std::vector<std::string> names;
  std::vector<int> resolutions;  ///< grid sizes N; empty means the base grid only
  int jobs = 1;
};

struct RunConfig {
  Mode mode = Mode::simulate;
  std::optional<GridConfig> grid;
  std::optional<scenario::ScenarioSpec> scenario;
  scenario::ScenarioPolicy policy;
  system::SolverConfig solver;
  PicardConfig picard;
  CharacteristicsConfig characteristics;
  HolderConfig holder;
  BesovConfig besov;
  SweepConfig sweep;
  std::optional<std::filesystem::path> output_dir;
  std::uint64_t seed = 0;
  /// Directory of the config file; relative paths resolve against it.
  std::filesystem::path base_dir;
  /// The parsed document after defaults were filled in.
  json echo;
};

/// Parses and validates; throws ConfigError listing every schema violation
/// (unknown keys, missing keys, bad values), each naming its key path.
/// `mode`, when given (the CLI subcommand), selects the mode; a "mode" key in
/// the document must then agree with it.
RunConfig parse_config(const std::filesystem::path& path, std::optional<Mode> mode = {});
RunConfig parse_config_json(const json& doc, const std::filesystem::path& base_dir = {},
                            std::optional<Mode> mode = {});

scenario::ScenarioSpec parse_scenario(const json& j, const std::string& where);
json scenario_to_json(const scenario::ScenarioSpec& spec);

}  // namespace novikov2c::harness
