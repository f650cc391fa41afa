#include "novikov2c/run.hpp"

#include <fftw3.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "novikov2c/characteristics.hpp"
#include "novikov2c/errors.hpp"
#include "novikov2c/holder.hpp"
#include "novikov2c/io.hpp"
#include "novikov2c/littlewood_paley.hpp"
#include "novikov2c/picard.hpp"
#include "novikov2c/scenario.hpp"

#ifndef NOVIKOV2C_VERSION
#define NOVIKOV2C_VERSION "0.0.0"
#endif

namespace novikov2c::harness {

namespace fs = std::filesystem;
using io::fmt17;
using spectral::RealField;
using system::HaltStatus;
using system::SystemState;
using system::Trajectory;

int exit_code(HaltStatus status) {
  switch (status) {
    case HaltStatus::completed: return kExitCompleted;
    case HaltStatus::breaking_detected: return kExitBreaking;
    case HaltStatus::underresolved: return kExitUnderresolved;
  }
  return kExitUsage;
}

const char* tool_version() { return NOVIKOV2C_VERSION; }
const char* fftw_version_string() { return fftw_version; }

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw UsageError("cannot write '" + p.string() + "'");
  return out;
}

json base_meta(const RunConfig& cfg, Mode mode) {
  json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["tool"] = {{"name", "novikov2c"}, {"version", tool_version()}};
  meta["fftw"] = fftw_version_string();
  meta["mode"] = std::string(to_string(mode));
  meta["config"] = cfg.echo;
  return meta;
}

class Logger {
 public:
  explicit Logger(const RunOptions& o) : quiet_(o.quiet), out_(o.log ? o.log : &std::cerr) {}
  template <class... Parts>
  void operator()(const Parts&... parts) const {
    if (quiet_) return;
    std::lock_guard<std::mutex> lock(mutex());
    ((*out_) << ... << parts) << '\n';
  }

 private:
  static std::mutex& mutex() {
    static std::mutex m;
    return m;
  }
  bool quiet_;
  std::ostream* out_;
};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

spectral::Grid grid_of(const RunConfig& cfg, std::optional<int> n_override = {}) {
  if (!cfg.grid) throw ConfigError("grid: required key missing");
  return spectral::make_grid(cfg.grid->L, n_override.value_or(cfg.grid->N));
}

struct Drift {
  double abs = 0.0;
  double rel = 0.0;
};

Drift drift(const std::vector<diagnostics::DiagnosticsRow>& rows,
            double diagnostics::DiagnosticsRow::*field) {
  Drift d;
  if (rows.empty()) return d;
  const double e0 = rows.front().*field;
  for (const auto& r : rows) d.abs = std::max(d.abs, std::abs(r.*field - e0));
  d.rel = e0 != 0.0 ? d.abs / std::abs(e0) : d.abs;
  return d;
}

double max_of(const std::vector<diagnostics::DiagnosticsRow>& rows,
              double diagnostics::DiagnosticsRow::*field) {
  double m = -INFINITY;
  for (const auto& r : rows) m = std::max(m, r.*field);
  return rows.empty() ? 0.0 : m;
}

std::string truncation_line(const Trajectory& traj) {
  return std::string(io::kTruncationMarker) + ": " + std::string(system::to_string(traj.status)) +
         " (" + traj.trigger + ") at t=" + fmt17(traj.t_final);
}

// Runs the solver with streamed diagnostics and snapshots. The returned
// trajectory keeps diagnostics rows (and dense nodes when requested) but not
// the snapshots, which live only on disk.
Trajectory stream_simulation(const SystemState& initial, system::SolverConfig solver,
                             const fs::path& dir, json& meta) {
  std::ofstream diag = open_out(dir / "diagnostics.csv");
  std::ofstream snaps = open_out(dir / "snapshots.ndjson");
  diag << io::diagnostics_header() << '\n';
  solver.keep_snapshots = false;
  std::vector<system::Monitor> monitors = {
      [&](const diagnostics::DiagnosticsRow& row) { diag << io::diagnostics_line(row) << '\n'; }};
  system::SnapshotSink sink = [&](const system::Snapshot& s) {
    snaps << io::snapshot_line(s) << '\n';
  };
  // The per-step auto dt is recomputed on the dealiased state inside simulate.
  Trajectory traj(initial.grid());
  try {
    traj = system::simulate(initial, solver, monitors, sink);
  } catch (const std::exception& e) {
    const std::string line = std::string(io::kTruncationMarker) + ": error: " + e.what();
    diag << line << '\n';
    snaps << line << '\n';
    throw;
  }
  const bool truncated = traj.status != HaltStatus::completed;
  if (truncated) {
    diag << truncation_line(traj) << '\n';
    snaps << truncation_line(traj) << '\n';
  }
  diag.flush();
  snaps.flush();

  const std::string status(system::to_string(traj.status));
  meta["status"] = status;
  meta["halt_reason"] = status;
  meta["trigger"] = traj.trigger;
  meta["t_final"] = traj.t_final;
  meta["steps"] = traj.steps;
  meta["truncated"] = truncated;
  meta["w_crossing"] = optional_number(traj.w_crossing);
  meta["cumulative_crossing"] = optional_number(traj.cumulative_crossing);
  if (!traj.diagnostics.empty()) {
    const double w0 = traj.diagnostics.front().sup_uux;
    meta["w0"] = w0;
    meta["w_threshold"] = solver.blowup.w_factor * w0 + solver.blowup.w_offset;
    meta["max_sup_uux"] = max_of(traj.diagnostics, &diagnostics::DiagnosticsRow::sup_uux);
    meta["max_blowup_cumulative"] =
        max_of(traj.diagnostics, &diagnostics::DiagnosticsRow::blowup_cumulative);
    const Drift d1 = drift(traj.diagnostics, &diagnostics::DiagnosticsRow::e1);
    const Drift d2 = drift(traj.diagnostics, &diagnostics::DiagnosticsRow::e2);
    meta["e1_drift"] = {{"abs", d1.abs}, {"rel", d1.rel}};
    meta["e2_drift"] = {{"abs", d2.abs}, {"rel", d2.rel}};
  }
  meta["outputs"] = {"diagnostics.csv", "snapshots.ndjson", "run_meta.json"};
  return traj;
}

scenario::Scenario build_data(const RunConfig& cfg, const spectral::Grid& grid,
                              const scenario::ScenarioSpec& spec) {
  return scenario::make_scenario(grid, spec, cfg.policy);
}

void attach_warnings(json& meta, const std::vector<std::string>& warnings, const Logger& log) {
  meta["warnings"] = warnings;
  for (const auto& w : warnings) log("warning: ", w);
}

// --- simulate ---------------------------------------------------------------

RunResult run_simulate(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::simulate);
  const spectral::Grid grid = grid_of(cfg);
  const scenario::Scenario data = build_data(cfg, grid, *cfg.scenario);
  attach_warnings(meta, data.warnings, log);
  meta["scenario"] = scenario::scenario_name(*cfg.scenario);
  const Trajectory traj = stream_simulation(data.state, cfg.solver, dir, meta);
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  log("simulate: ", system::to_string(traj.status), " (", traj.trigger, ") t=", fmt17(traj.t_final),
      " steps=", traj.steps);
  return {exit_code(traj.status), std::string(system::to_string(traj.status)), dir};
}

// --- picard -----------------------------------------------------------------

RunResult run_picard(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::picard);
  const spectral::Grid grid = grid_of(cfg);
  const scenario::Scenario data = build_data(cfg, grid, *cfg.scenario);
  attach_warnings(meta, data.warnings, log);

  picard::PicardOptions opt;
  opt.n_max = cfg.picard.n_max;
  opt.horizon = cfg.picard.horizon;
  opt.horizon_factor = cfg.picard.horizon_factor;
  opt.dt = cfg.picard.dt;
  opt.cfl = cfg.solver.cfl;
  opt.dealias = cfg.solver.dealias;
  opt.convergence_floor = cfg.picard.convergence_floor;
  opt.divergence_factor = cfg.picard.divergence_factor;
  const picard::PicardResult result = picard::picard_sequence(data.state, opt);
  const picard::PicardReport& r = result.report;

  std::ofstream csv = open_out(dir / "picard.csv");
  csv << "n,besov_rho_half,besov_u_threehalves,u_integral,A_n\n";
  for (int n = 1; n <= r.iterates(); ++n) {
    const std::size_t i = static_cast<std::size_t>(n - 1);
    csv << n << ',' << fmt17(r.besov_rho[i]) << ',' << fmt17(r.besov_u[i]) << ','
        << fmt17(r.u_integral[i]) << ',' << (i < r.a.size() ? fmt17(r.a[i]) : "nan") << '\n';
  }
  csv.close();
  {
    std::ofstream fin = open_out(dir / "picard_final.ndjson");
    const SystemState& s = result.final_iterate;
    fin << io::snapshot_line({s.t, s.rho, s.u}) << '\n';
  }

  bool decreasing = true;
  for (std::size_t i = 1; i < r.a.size(); ++i) {
    if (r.a[i - 1] <= r.floor) break;
    if (!(r.a[i] < r.a[i - 1])) decreasing = false;
  }
  const std::string status = r.diverged ? "diverged" : "completed";
  meta["status"] = status;
  meta["picard"] = {{"horizon", r.horizon},
                    {"horizon_surrogate", r.horizon_surrogate},
                    {"dt", r.dt},
                    {"steps", r.steps},
                    {"iterates", r.iterates()},
                    {"floor", r.floor},
                    {"diverged", r.diverged},
                    {"converged_at", r.converged_at ? json(*r.converged_at) : json(nullptr)},
                    {"strictly_decreasing_until_floor", decreasing}};
  meta["outputs"] = {"picard.csv", "picard_final.ndjson", "run_meta.json"};
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  log("picard: ", r.iterates(), " iterates on [0, ", fmt17(r.horizon), "], ",
      r.diverged ? "diverged" : (r.converged_at ? "reached the rounding floor" : "not converged"));
  return {kExitCompleted, status, dir};
}

// --- besov ------------------------------------------------------------------

std::string index_cell(double v) { return std::isinf(v) ? "inf" : fmt17(v); }

RunResult run_besov(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::besov);
  int malformed = 0;
  const auto snaps = io::read_snapshots(cfg.besov.snapshots, &malformed);
  const int count = static_cast<int>(snaps.size());
  const int idx = cfg.besov.snapshot < 0 ? count + cfg.besov.snapshot : cfg.besov.snapshot;
  if (idx < 0 || idx >= count) {
    throw ConfigError("besov.snapshot: index " + std::to_string(cfg.besov.snapshot) +
                      " out of range for " + std::to_string(count) + " snapshots");
  }
  const io::StoredSnapshot& s = snaps[static_cast<std::size_t>(idx)];
  const spectral::Grid grid = spectral::make_grid(s.L, s.N);
  std::vector<std::string> warnings;
  if (cfg.grid && (cfg.grid->L != s.L || cfg.grid->N != s.N)) {
    warnings.push_back("grid in config differs from the snapshot file; the file's grid is used");
  }
  if (malformed) warnings.push_back(std::to_string(malformed) + " malformed snapshot lines skipped");
  attach_warnings(meta, warnings, log);

  const RealField rho(grid, s.rho);
  const RealField u(grid, s.u);
  const lp::DyadicFamily family(grid);

  std::ofstream csv = open_out(dir / "besov.csv");
  csv << "field,quantity,j,s,p,r,value\n";
  const std::string none = "nan";
  auto row = [&](const std::string& field, const std::string& q, const std::string& j,
                 const std::string& sv, const std::string& p, const std::string& r, double value) {
    csv << field << ',' << q << ',' << j << ',' << sv << ',' << p << ',' << r << ','
        << fmt17(value) << '\n';
  };
  json norms = json::object();
  for (const auto& [name, f] : {std::pair<std::string, const RealField*>{"rho", &rho}, {"u", &u}}) {
    const auto l2 = family.block_norms(*f, 2.0);
    const auto linf = family.block_norms(*f, lp::BesovIndex::infinity);
    for (int j = -1; j <= family.j_max(); ++j) {
      row(name, "block_l2", std::to_string(j), none, "2", none, l2[static_cast<std::size_t>(j + 1)]);
      row(name, "block_linf", std::to_string(j), none, "inf", none,
          linf[static_cast<std::size_t>(j + 1)]);
    }
    json entries = json::array();
    for (const auto& bi : cfg.besov.indices) {
      const double v = family.besov_norm(*f, {bi.s, bi.p, bi.r});
      row(name, "besov", none, fmt17(bi.s), index_cell(bi.p), index_cell(bi.r), v);
      entries.push_back({{"s", bi.s}, {"p", std::isinf(bi.p) ? json("inf") : json(bi.p)},
                         {"r", std::isinf(bi.r) ? json("inf") : json(bi.r)}, {"value", v}});
    }
    for (double sv : {0.5, 1.5}) row(name, "sobolev", none, fmt17(sv), "2", none, lp::sobolev_norm(*f, sv));
    double gap = NAN;
    try {
      gap = family.log_interpolation_gap(*f);
    } catch (const DomainError&) {
      // zero field: the ratio is undefined
    }
    row(name, "log_interpolation_gap", none, none, none, none, gap);
    norms[name] = {{"besov", entries}, {"log_interpolation_gap", gap}};
  }

  // Bony decomposition of the products entering the system.
  for (const auto& [name, a, b] :
       {std::tuple<std::string, const RealField*, const RealField*>{"u*u", &u, &u},
        {"rho*u", &rho, &u},
        {"rho*rho", &rho, &rho}}) {
    const lp::BonyParts parts = family.bony_decompose(*a, *b);
    const RealField product = (*a) * (*b);
    const RealField sum = parts.paraproduct_uv + parts.paraproduct_vu + parts.remainder;
    row(name, "paraproduct_ab_l2", none, none, "2", none, spectral::l2_norm(parts.paraproduct_uv));
    row(name, "paraproduct_ba_l2", none, none, "2", none, spectral::l2_norm(parts.paraproduct_vu));
    row(name, "remainder_l2", none, none, "2", none, spectral::l2_norm(parts.remainder));
    row(name, "remainder_besov", none, "1", "2", "1",
        family.besov_norm(parts.remainder, {1.0, 2.0, 1.0}));
    row(name, "reconstruction_error_l2", none, none, "2", none,
        spectral::l2_norm(product - sum));
  }
  for (int j = -1; j <= family.j_max(); ++j) {
    row("[u,Delta_j]rho_x", "commutator_l2", std::to_string(j), none, "2", none,
        family.commutator_probe(u, rho, j));
  }
  csv.close();

  meta["status"] = "completed";
  meta["besov"] = {{"source", cfg.besov.snapshots.string()},
                   {"snapshot", idx},
                   {"t", s.t},
                   {"j_max", family.j_max()},
                   {"norms", norms}};
  meta["outputs"] = {"besov.csv", "run_meta.json"};
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  log("besov: snapshot ", idx, " at t=", fmt17(s.t), ", ", family.block_count(), " blocks");
  return {kExitCompleted, "completed", dir};
}

// --- characteristics ----------------------------------------------------------

Trajectory load_stored_run(const fs::path& run, std::vector<std::string>& warnings) {
  bool dealias = true;
  const fs::path meta_path = run / "run_meta.json";
  if (fs::exists(meta_path)) {
    const json m = io::read_json_file(meta_path);
    if (m.contains("config") && m["config"].contains("solver")) {
      const json& s = m["config"]["solver"];
      if (s.contains("dealias") && s["dealias"].is_boolean()) dealias = s["dealias"].get<bool>();
      if (s.contains("snapshot_stride") && s["snapshot_stride"] != 1) {
        warnings.push_back("stored run kept every " + s["snapshot_stride"].dump() +
                           "th step; dense output interpolates across the gaps");
      }
    }
    if (m.value("truncated", false)) warnings.push_back("stored run was truncated");
  } else {
    warnings.push_back("stored run has no run_meta.json; assuming a dealiased run");
  }
  int malformed = 0;
  const auto snaps = io::read_snapshots(run / "snapshots.ndjson", &malformed);
  if (malformed) warnings.push_back(std::to_string(malformed) + " malformed snapshot lines skipped");
  if (snaps.size() < 2) throw UsageError("stored run needs at least two snapshots");
  const spectral::Grid grid = spectral::make_grid(snaps.front().L, snaps.front().N);
  Trajectory traj(grid);
  for (const auto& s : snaps) {
    if (s.L != grid.length() || s.N != grid.size()) {
      throw UsageError("snapshots in '" + run.string() + "' mix grids");
    }
    if (!traj.dense.empty() && !(s.t > traj.dense.back().t)) continue;
    SystemState state(RealField(grid, s.rho), RealField(grid, s.u), s.t);
    if (!state.all_finite()) break;
    system::Tendency d = system::rhs_hyperbolic(state, dealias);
    traj.dense.push_back({s.t, state.rho, state.u, std::move(d.rho), std::move(d.u)});
  }
  if (traj.dense.size() < 2) throw UsageError("stored run needs at least two finite snapshots");
  traj.t_final = traj.dense.back().t;
  return traj;
}

RunResult run_characteristics(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::characteristics);
  std::vector<std::string> warnings;
  std::optional<Trajectory> traj;
  int code = kExitCompleted;
  std::string status = "completed";
  if (cfg.characteristics.run) {
    traj = load_stored_run(*cfg.characteristics.run, warnings);
    meta["source"] = cfg.characteristics.run->string();
  } else {
    const spectral::Grid grid = grid_of(cfg);
    const scenario::Scenario data = build_data(cfg, grid, *cfg.scenario);
    warnings.insert(warnings.end(), data.warnings.begin(), data.warnings.end());
    system::SolverConfig solver = cfg.solver;
    solver.record_dense = true;
    traj = stream_simulation(data.state, solver, dir, meta);
    code = exit_code(traj->status);
    status = std::string(system::to_string(traj->status));
  }
  attach_warnings(meta, warnings, log);

  const double L = traj->grid.length();
  const double first = cfg.characteristics.first.value_or(0.25 * L);
  const double last = cfg.characteristics.last.value_or(0.75 * L);
  if (!(first >= 0.0 && first < L)) throw ConfigError("characteristics.first: must lie in [0, L)");
  if (!(last >= 0.0 && last < L)) throw ConfigError("characteristics.last: must lie in [0, L)");
  if (!(last > first)) throw ConfigError("characteristics.last: must exceed characteristics.first");

  diagnostics::FlowMapOptions fopt;
  fopt.substeps = cfg.characteristics.substeps;
  const diagnostics::FlowMap flow = diagnostics::integrate_flow_map(
      *traj, diagnostics::uniform_seeds(first, last, cfg.characteristics.count), fopt);
  const diagnostics::IdentityCheck jac = diagnostics::jacobian_check(flow, *traj);
  const diagnostics::IdentityCheck dens =
      diagnostics::density_transport_check(flow, *traj, cfg.characteristics.rho_cutoff);

  std::ofstream csv = open_out(dir / "flowmap.csv");
  csv << "t,seed,phi,winding,exponent,jacobian\n";
  double min_jac = INFINITY;
  for (std::size_t i = 0; i < flow.times.size(); ++i) {
    for (std::size_t q = 0; q < flow.seeds.size(); ++q) {
      const double jv = flow.jacobian(i, q);
      min_jac = std::min(min_jac, jv);
      csv << fmt17(flow.times[i]) << ',' << fmt17(flow.seeds[q]) << ',' << fmt17(flow.phi[i][q])
          << ',' << flow.winding(i, q) << ',' << fmt17(flow.exponent[i][q]) << ',' << fmt17(jv)
          << '\n';
    }
  }
  csv.close();

  meta["status"] = status;
  meta["characteristics"] = {{"seeds", flow.seeds.size()},
                             {"records", flow.times.size()},
                             {"t_end", flow.times.back()},
                             {"monotone", flow.monotone()},
                             {"min_jacobian", min_jac},
                             {"jacobian_max_rel_error", jac.max_rel_error},
                             {"jacobian_samples", jac.samples},
                             {"density_max_rel_error", dens.max_rel_error},
                             {"density_samples", dens.samples},
                             {"density_sign_changes", dens.sign_changes},
                             {"skipped_seeds", dens.skipped_seeds}};
  json outputs = meta.value("outputs", json::array());
  outputs.push_back("flowmap.csv");
  if (std::find(outputs.begin(), outputs.end(), "run_meta.json") == outputs.end()) {
    outputs.push_back("run_meta.json");
  }
  meta["outputs"] = outputs;
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  log("characteristics: ", flow.seeds.size(), " seeds, jacobian error ", fmt17(jac.max_rel_error),
      ", density error ", fmt17(dens.max_rel_error), ", skipped ", dens.skipped_seeds.size());
  return {code, status, dir};
}

// --- holder -------------------------------------------------------------------

RunResult run_holder(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::holder);
  const spectral::Grid grid = grid_of(cfg);
  const scenario::Scenario base = build_data(cfg, grid, *cfg.scenario);
  std::vector<std::string> warnings = base.warnings;
  SystemState direction = base.state;
  if (cfg.holder.direction) {
    const scenario::Scenario d = build_data(cfg, grid, *cfg.holder.direction);
    warnings.insert(warnings.end(), d.warnings.begin(), d.warnings.end());
    direction = d.state;
  }
  attach_warnings(meta, warnings, log);

  diagnostics::HolderOptions opt;
  opt.epsilons = cfg.holder.epsilons;
  opt.horizon = cfg.holder.horizon;
  opt.s_prime = cfg.holder.s_prime;
  opt.s = cfg.holder.s;
  opt.solver = cfg.solver;
  const diagnostics::HolderReport r = diagnostics::holder_dependence_probe(base.state, direction, opt);

  std::ofstream csv = open_out(dir / "holder.csv");
  csv << "epsilon,distance,excluded,status\n";
  for (const auto& row : r.rows) {
    csv << fmt17(row.epsilon) << ',' << fmt17(row.distance) << ',' << (row.excluded ? 1 : 0) << ','
        << row.status << '\n';
  }
  csv.close();

  meta["status"] = r.base_status;
  meta["holder"] = {{"slope", r.slope},          {"intercept", r.intercept}, {"fitted", r.fitted},
                    {"monotone", r.monotone},    {"theta", r.theta},
                    {"base_status", r.base_status}};
  meta["outputs"] = {"holder.csv", "run_meta.json"};
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  log("holder: slope ", fmt17(r.slope), " over ", r.fitted, " points (theta = ", fmt17(r.theta), ")");
  int code = kExitCompleted;
  if (r.base_status == "breaking-detected") code = kExitBreaking;
  if (r.base_status == "underresolved") code = kExitUnderresolved;
  return {code, r.base_status, dir};
}

// --- sweep --------------------------------------------------------------------

struct SweepRow {
  std::string name;
  int N = 0;
  std::string status = "not-run";
  int code = kExitUsage;
  std::string trigger;
  std::string message;
  json meta;
};

RunResult run_sweep(const RunConfig& cfg, const fs::path& dir, const Logger& log) {
  const auto start = std::chrono::steady_clock::now();
  json meta = base_meta(cfg, Mode::sweep);
  std::vector<int> resolutions = cfg.sweep.resolutions;
  if (resolutions.empty()) resolutions.push_back(grid_of(cfg).size());

  struct Job {
    std::size_t scenario;
    int N;
  };
  std::vector<Job> jobs;
  for (std::size_t s = 0; s < cfg.sweep.scenarios.size(); ++s) {
    for (int n : resolutions) jobs.push_back({s, n});
  }
  std::vector<SweepRow> rows(jobs.size());

  auto run_one = [&](std::size_t k) {
    const Job& job = jobs[k];
    SweepRow& row = rows[k];
    row.name = cfg.sweep.names[job.scenario];
    row.N = job.N;
    char sub[32];
    std::snprintf(sub, sizeof sub, "run_%03zu", k);
    const fs::path run_dir = dir / sub;
    fs::create_directories(run_dir);
    RunConfig child = cfg;
    child.mode = Mode::simulate;
    child.scenario = cfg.sweep.scenarios[job.scenario];
    child.grid = GridConfig{cfg.grid->L, job.N};
    child.echo = cfg.echo;
    child.echo["mode"] = "simulate";
    child.echo.erase("sweep");
    child.echo["grid"] = {{"L", cfg.grid->L}, {"N", job.N}};
    child.echo["scenario"] = scenario_to_json(*child.scenario);
    child.echo["name"] = row.name;
    json m = base_meta(child, Mode::simulate);
    m["scenario"] = row.name;
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const spectral::Grid grid = grid_of(child);
      const scenario::Scenario data = build_data(child, grid, *child.scenario);
      m["warnings"] = data.warnings;
      const Trajectory traj = stream_simulation(data.state, child.solver, run_dir, m);
      m["wall_time_s"] = elapsed_seconds(t0);
      row.status = std::string(system::to_string(traj.status));
      row.code = exit_code(traj.status);
      row.trigger = traj.trigger;
    } catch (const std::exception& e) {
      row.status = "error";
      row.code = kExitUsage;
      row.message = e.what();
      m["status"] = "error";
      m["error"] = e.what();
    }
    io::write_json_file(run_dir / "run_meta.json", m);
    row.meta = m;
    log("sweep: ", sub, " ", row.name, " N=", row.N, " -> ", row.status,
        row.message.empty() ? "" : ": " + row.message);
  };

  const int workers = std::max(1, std::min<int>(cfg.sweep.jobs, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (std::size_t k = 0; k < jobs.size(); ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs.size(); k = next++) run_one(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::ofstream csv = open_out(dir / "sweep.csv");
  csv << "run,name,N,status,exit_code,trigger,t_final,steps,w0,max_sup_uux,max_blowup_cumulative,"
         "e1_drift_rel,e2_drift_rel,w_crossing,cumulative_crossing\n";
  auto num = [](const json& m, const char* key) {
    return m.contains(key) && m[key].is_number() ? fmt17(m[key].get<double>()) : std::string("nan");
  };
  auto nested = [](const json& m, const char* key) {
    return m.contains(key) && m[key].contains("rel") ? fmt17(m[key]["rel"].get<double>())
                                                     : std::string("nan");
  };
  json summary = json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const SweepRow& r = rows[k];
    csv << k << ',' << r.name << ',' << r.N << ',' << r.status << ',' << r.code << ','
        << (r.trigger.empty() ? "none" : r.trigger) << ',' << num(r.meta, "t_final") << ','
        << (r.meta.contains("steps") ? r.meta["steps"].dump() : "0") << ',' << num(r.meta, "w0")
        << ',' << num(r.meta, "max_sup_uux") << ',' << num(r.meta, "max_blowup_cumulative") << ','
        << nested(r.meta, "e1_drift") << ',' << nested(r.meta, "e2_drift") << ','
        << num(r.meta, "w_crossing") << ',' << num(r.meta, "cumulative_crossing") << '\n';
    summary.push_back({{"run", k}, {"name", r.name}, {"N", r.N}, {"status", r.status},
                       {"exit_code", r.code}});
  }
  csv.close();
  meta["status"] = "completed";
  meta["runs"] = summary;
  meta["outputs"] = {"sweep.csv", "run_meta.json"};
  meta["wall_time_s"] = elapsed_seconds(start);
  io::write_json_file(dir / "run_meta.json", meta);
  return {kExitCompleted, "completed", dir};
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg, const fs::path& out_dir, const RunOptions& options) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw UsageError("cannot create output directory '" + out_dir.string() + "'");
  }
  const Logger log(options);
  switch (cfg.mode) {
    case Mode::simulate: return run_simulate(cfg, out_dir, log);
    case Mode::picard: return run_picard(cfg, out_dir, log);
    case Mode::besov: return run_besov(cfg, out_dir, log);
    case Mode::characteristics: return run_characteristics(cfg, out_dir, log);
    case Mode::holder: return run_holder(cfg, out_dir, log);
    case Mode::sweep: return run_sweep(cfg, out_dir, log);
  }
  throw UsageError("unknown mode");
}

}  // namespace novikov2c::harness
