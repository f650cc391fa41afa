#include "novikov2c/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "novikov2c/errors.hpp"

namespace novikov2c::system {

std::string_view to_string(HaltStatus status) {
  switch (status) {
    case HaltStatus::completed:
      return "completed";
    case HaltStatus::breaking_detected:
      return "breaking-detected";
    case HaltStatus::underresolved:
      return "underresolved";
  }
  return "unknown";
}

void SolverConfig::validate() const {
  if (dt && !(*dt > 0.0)) throw ConfigError("solver.dt must be positive");
  if (!(cfl > 0.0)) throw ConfigError("solver.cfl must be positive");
  if (!(t_end >= 0.0)) throw ConfigError("solver.t_end must be nonnegative");
  if (snapshot_stride < 1) throw ConfigError("solver.snapshot_stride must be >= 1");
  if (!(tail_threshold > 0.0)) throw ConfigError("solver.tail_threshold must be positive");
}

SystemState hermite(const DenseNode& a, const DenseNode& b, double t) {
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  RealField rho(a.rho.grid());
  RealField u(a.u.grid());
  for (int i = 0; i < rho.size(); ++i) {
    rho[i] = h00 * a.rho[i] + h * h10 * a.rho_t[i] + h01 * b.rho[i] + h * h11 * b.rho_t[i];
    u[i] = h00 * a.u[i] + h * h10 * a.u_t[i] + h01 * b.u[i] + h * h11 * b.u_t[i];
  }
  return SystemState(std::move(rho), std::move(u), t);
}

double Trajectory::t_begin() const {
  if (!dense.empty()) return dense.front().t;
  return snapshots.empty() ? 0.0 : snapshots.front().t;
}

double Trajectory::t_end() const {
  if (!dense.empty()) return dense.back().t;
  return snapshots.empty() ? 0.0 : snapshots.back().t;
}

std::size_t Trajectory::interval(double t) const {
  if (dense.size() < 2) throw UsageError("trajectory has no dense output");
  if (t < dense.front().t || t > dense.back().t) {
    throw UsageError("time " + std::to_string(t) + " outside the stored range [" +
                     std::to_string(dense.front().t) + ", " + std::to_string(dense.back().t) +
                     "]");
  }
  auto it = std::upper_bound(dense.begin(), dense.end(), t,
                             [](double v, const DenseNode& n) { return v < n.t; });
  std::size_t i = static_cast<std::size_t>(it - dense.begin());
  if (i == 0) return 0;
  return std::min(i - 1, dense.size() - 2);
}

SystemState Trajectory::sample(double t) const {
  const std::size_t i = interval(t);
  const DenseNode& a = dense[i];
  const DenseNode& b = dense[i + 1];
  if (t == a.t) return SystemState(a.rho, a.u, t);
  if (t == b.t) return SystemState(b.rho, b.u, t);
  return hermite(a, b, t);
}

double auto_time_step(const SystemState& state, double cfl) {
  const double umax = spectral::sup_norm(state.u);
  return cfl * state.grid().spacing() / std::max(1.0, umax * umax);
}

namespace {

DenseNode make_node(const SystemState& s, bool dealias) {
  Tendency d = rhs_hyperbolic(s, dealias);
  return {s.t, s.rho, s.u, std::move(d.rho), std::move(d.u)};
}

}  // namespace

Trajectory simulate(const SystemState& initial, const SolverConfig& cfg,
                    const std::vector<Monitor>& monitors, const SnapshotSink& snapshot_sink) {
  cfg.validate();
  const Grid& grid = initial.grid();
  Trajectory traj(grid);

  SystemState state = cfg.dealias ? SystemState(spectral::dealias(initial.rho),
                                                spectral::dealias(initial.u), initial.t)
                                  : initial;
  std::optional<lp::DyadicFamily> family;
  if (cfg.besov_diagnostics) family.emplace(grid);

  diagnostics::BlowupMonitor monitor(cfg.blowup);
  monitor.update(state, 0.0);

  auto record_snapshot = [&](const SystemState& s) {
    Snapshot snap{s.t, s.rho, s.u};
    if (snapshot_sink) snapshot_sink(snap);
    if (cfg.keep_snapshots) traj.snapshots.push_back(std::move(snap));
  };

  auto record_row = [&](const diagnostics::DiagnosticsRow& row) {
    traj.diagnostics.push_back(row);
    for (const auto& m : monitors) m(row);
  };

  record_row(diagnostics::make_row(state, monitor, family ? &*family : nullptr));
  record_snapshot(state);
  if (cfg.record_dense) traj.dense.push_back(make_node(state, cfg.dealias));

  const double t_stop = initial.t + cfg.t_end;
  const double t_tol = 1e-12 * std::max(1.0, std::abs(t_stop));
  bool snapshot_is_current = true;
  bool halted = false;

  while (t_stop - state.t > t_tol) {
    double dt = cfg.dt ? *cfg.dt : auto_time_step(state, cfg.cfl);
    if (state.t + dt > t_stop - t_tol) dt = t_stop - state.t;

    std::optional<SystemState> next = step_rk4(state, dt, cfg.dealias);
    if (!next) {
      traj.status = HaltStatus::breaking_detected;
      if (!monitor.w_crossing() && !monitor.cumulative_crossing()) traj.trigger = "non-finite";
      halted = true;
      break;
    }
    diagnostics::BlowupMonitor candidate = blowup_update(monitor, *next, dt);
    const diagnostics::DiagnosticsRow row =
        diagnostics::make_row(*next, candidate, family ? &*family : nullptr);
    if (!row.all_finite()) {
      traj.status = HaltStatus::breaking_detected;
      if (!monitor.w_crossing() && !monitor.cumulative_crossing()) traj.trigger = "non-finite";
      halted = true;
      break;
    }
    state = std::move(*next);
    monitor = candidate;
    ++traj.steps;
    record_row(row);
    if (cfg.record_dense) traj.dense.push_back(make_node(state, cfg.dealias));
    snapshot_is_current = traj.steps % cfg.snapshot_stride == 0;
    if (snapshot_is_current) record_snapshot(state);

    const auto wc = monitor.w_crossing();
    const auto cc = monitor.cumulative_crossing();
    if (wc || cc) {
      const double first = std::min(wc.value_or(INFINITY), cc.value_or(INFINITY));
      traj.trigger = (wc && (!cc || *wc <= *cc)) ? "sup_uux" : "cumulative";
      if ((wc && cc) || state.t >= first + cfg.blowup.confirm_window) {
        traj.status = HaltStatus::breaking_detected;
        halted = true;
        break;
      }
    } else if (row.spectral_tail_ratio > cfg.tail_threshold) {
      traj.status = HaltStatus::underresolved;
      traj.trigger = "spectral-tail";
      halted = true;
      break;
    }
  }

  if (!halted && (monitor.w_crossing() || monitor.cumulative_crossing())) {
    traj.status = HaltStatus::breaking_detected;
  }
  if (!snapshot_is_current) record_snapshot(state);
  traj.t_final = state.t;
  traj.w_crossing = monitor.w_crossing();
  traj.cumulative_crossing = monitor.cumulative_crossing();
  return traj;
}

}  // namespace novikov2c::system
