#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "novikov2c/monitors.hpp"
#include "novikov2c/system.hpp"

namespace novikov2c::system {

enum class HaltStatus { completed, breaking_detected, underresolved };

std::string_view to_string(HaltStatus status);

struct SolverConfig {
  /// Explicit step; std::nullopt selects dt = cfl * dx / max(1, max u^2) per step.
  std::optional<double> dt;
  double cfl = 0.3;
  double t_end = 1.0;
  bool dealias = true;
  /// Keep every k-th step as a snapshot (the initial and final states are always kept).
  int snapshot_stride = 1;
  /// Store every step with its tendency for Hermite dense output.
  bool record_dense = false;
  /// Keep snapshots in the trajectory; a snapshot sink sees them either way.
  bool keep_snapshots = true;
  /// Compute the Besov columns of the diagnostics stream.
  bool besov_diagnostics = true;
  diagnostics::BlowupThresholds blowup;
  /// Top-octave energy fraction that halts the run as underresolved.
  double tail_threshold = 1e-4;

  void validate() const;
};

struct Snapshot {
  double t;
  RealField rho;
  RealField u;
};

/// A stored step for dense output: state and its time derivative.
struct DenseNode {
  double t;
  RealField rho;
  RealField u;
  RealField rho_t;
  RealField u_t;
};

/// Cubic Hermite interpolation in time between two dense nodes.
SystemState hermite(const DenseNode& a, const DenseNode& b, double t);

struct Trajectory {
  Grid grid;
  std::vector<Snapshot> snapshots;
  std::vector<diagnostics::DiagnosticsRow> diagnostics;
  std::vector<DenseNode> dense;

  HaltStatus status = HaltStatus::completed;
  /// What ended the run: "t_end", "sup_uux", "cumulative", "non-finite", "spectral-tail".
  std::string trigger = "t_end";
  double t_final = 0.0;
  std::optional<double> w_crossing;
  std::optional<double> cumulative_crossing;
  int steps = 0;

  explicit Trajectory(Grid g) : grid(std::move(g)) {}

  double t_begin() const;
  double t_end() const;
  /// Dense-output state at time t; throws UsageError outside the stored range
  /// or when the run was not recorded densely.
  SystemState sample(double t) const;
  /// Index i of the dense interval [t_i, t_{i+1}] containing t.
  std::size_t interval(double t) const;
};

using Monitor = std::function<void(const diagnostics::DiagnosticsRow&)>;
using SnapshotSink = std::function<void(const Snapshot&)>;

double auto_time_step(const SystemState& state, double cfl);

/// Integrates the hyperbolic system from `initial` to cfg.t_end, halting on
/// blow-up indicators or resolution loss. Never throws for halts: the reason
/// is recorded in the returned trajectory.
Trajectory simulate(const SystemState& initial, const SolverConfig& cfg,
                    const std::vector<Monitor>& monitors = {},
                    const SnapshotSink& snapshot_sink = {});

}  // namespace novikov2c::system
