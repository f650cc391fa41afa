#pragma once

// Conservation laws and blow-up indicators evaluated on a single state.

#include <optional>

#include "novikov2c/littlewood_paley.hpp"
#include "novikov2c/system.hpp"

namespace novikov2c::diagnostics {

using system::SystemState;

/// E1 = int u^2 + u_x^2 dx, E2 = int rho^2 dx (trapezoid on the grid).
struct ConservedPair {
  double e1 = 0.0;
  double e2 = 0.0;
};

ConservedPair conserved_quantities(const SystemState& state);

struct BlowupThresholds {
  /// Breaking indicator threshold is w_factor * W(0) + w_offset.
  double w_factor = 50.0;
  double w_offset = 10.0;
  /// Threshold on int_0^t ||u||_inf^2 + ||u_x||_inf^2 + ||rho||_inf^2.
  double cumulative = 1e3;
  /// After the first crossing the run continues for at most this long so the
  /// other criterion's crossing can be recorded.
  double confirm_window = 0.1;
};

/// Sequential monitor for the integral blow-up criterion and the slope
/// indicator sup u u_x. Grid maxima stand in for suprema over the line.
class BlowupMonitor {
 public:
  explicit BlowupMonitor(BlowupThresholds thresholds = {});

  /// First call initialises at the state's time; later calls advance the
  /// cumulative integral by the trapezoid rule over dt.
  void update(const SystemState& state, double dt);

  double integrand() const { return integrand_; }
  double cumulative() const { return cumulative_; }
  double breaking_indicator() const { return w_; }
  double abs_breaking_indicator() const { return w_abs_; }
  double initial_indicator() const { return w0_; }
  double w_threshold() const { return thresholds_.w_factor * w0_ + thresholds_.w_offset; }
  const BlowupThresholds& thresholds() const { return thresholds_; }

  /// Times at which each criterion first exceeded its threshold.
  std::optional<double> w_crossing() const { return w_cross_; }
  std::optional<double> cumulative_crossing() const { return cum_cross_; }
  bool started() const { return started_; }

 private:
  BlowupThresholds thresholds_;
  bool started_ = false;
  double integrand_ = 0.0;
  double cumulative_ = 0.0;
  double w_ = 0.0;
  double w_abs_ = 0.0;
  double w0_ = 0.0;
  std::optional<double> w_cross_;
  std::optional<double> cum_cross_;
};

/// Functional form of BlowupMonitor::update.
BlowupMonitor blowup_update(BlowupMonitor monitor, const SystemState& state, double dt);

/// Pointwise indicators: {max u u_x, max |u u_x|, ||u||^2 + ||u_x||^2 + ||rho||^2 (sup norms)}.
struct PointIndicators {
  double sup_uux = 0.0;
  double sup_abs_uux = 0.0;
  double integrand = 0.0;
};
PointIndicators point_indicators(const SystemState& state);

struct DiagnosticsRow {
  double t = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double sup_uux = 0.0;
  double sup_abs_uux = 0.0;
  double blowup_integrand = 0.0;
  double blowup_cumulative = 0.0;
  double besov_rho_half = 0.0;        ///< ||rho||_{B^{1/2}_{2,1}}
  double besov_u_threehalves = 0.0;   ///< ||u||_{B^{3/2}_{2,1}}
  double spectral_tail_ratio = 0.0;

  bool all_finite() const;
};

DiagnosticsRow make_row(const SystemState& state, const BlowupMonitor& monitor,
                        const lp::DyadicFamily* family);

}  // namespace novikov2c::diagnostics
