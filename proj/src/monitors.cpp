#include "novikov2c/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace novikov2c::diagnostics {

using spectral::RealField;

ConservedPair conserved_quantities(const SystemState& state) {
  const RealField ux = spectral::derivative(state.u, 1);
  double e1 = 0.0;
  double e2 = 0.0;
  for (int i = 0; i < state.u.size(); ++i) {
    e1 += state.u[i] * state.u[i] + ux[i] * ux[i];
    e2 += state.rho[i] * state.rho[i];
  }
  const double dx = state.grid().spacing();
  return {e1 * dx, e2 * dx};
}

PointIndicators point_indicators(const SystemState& state) {
  const RealField ux = spectral::derivative(state.u, 1);
  double w = -std::numeric_limits<double>::infinity();
  double w_abs = 0.0;
  double umax = 0.0, uxmax = 0.0, rmax = 0.0;
  for (int i = 0; i < state.u.size(); ++i) {
    const double p = state.u[i] * ux[i];
    w = std::max(w, p);
    w_abs = std::max(w_abs, std::abs(p));
    umax = std::max(umax, std::abs(state.u[i]));
    uxmax = std::max(uxmax, std::abs(ux[i]));
    rmax = std::max(rmax, std::abs(state.rho[i]));
  }
  return {w, w_abs, umax * umax + uxmax * uxmax + rmax * rmax};
}

BlowupMonitor::BlowupMonitor(BlowupThresholds thresholds) : thresholds_(thresholds) {}

void BlowupMonitor::update(const SystemState& state, double dt) {
  const PointIndicators p = point_indicators(state);
  if (!started_) {
    started_ = true;
    w0_ = p.sup_uux;
    cumulative_ = 0.0;
  } else {
    cumulative_ += 0.5 * dt * (integrand_ + p.integrand);
  }
  integrand_ = p.integrand;
  w_ = p.sup_uux;
  w_abs_ = p.sup_abs_uux;
  if (!w_cross_ && w_ > w_threshold()) w_cross_ = state.t;
  if (!cum_cross_ && cumulative_ > thresholds_.cumulative) cum_cross_ = state.t;
}

BlowupMonitor blowup_update(BlowupMonitor monitor, const SystemState& state, double dt) {
  monitor.update(state, dt);
  return monitor;
}

bool DiagnosticsRow::all_finite() const {
  for (double v : {t, e1, e2, sup_uux, sup_abs_uux, blowup_integrand, blowup_cumulative,
                   besov_rho_half, besov_u_threehalves, spectral_tail_ratio}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

DiagnosticsRow make_row(const SystemState& state, const BlowupMonitor& monitor,
                        const lp::DyadicFamily* family) {
  DiagnosticsRow row;
  row.t = state.t;
  const ConservedPair e = conserved_quantities(state);
  row.e1 = e.e1;
  row.e2 = e.e2;
  row.sup_uux = monitor.breaking_indicator();
  row.sup_abs_uux = monitor.abs_breaking_indicator();
  row.blowup_integrand = monitor.integrand();
  row.blowup_cumulative = monitor.cumulative();
  if (family) {
    row.besov_rho_half = family->besov_norm(state.rho, {0.5, 2.0, 1.0});
    row.besov_u_threehalves = family->besov_norm(state.u, {1.5, 2.0, 1.0});
  }
  row.spectral_tail_ratio =
      std::max(spectral::spectral_tail_ratio(state.rho), spectral::spectral_tail_ratio(state.u));
  return row;
}

}  // namespace novikov2c::diagnostics
