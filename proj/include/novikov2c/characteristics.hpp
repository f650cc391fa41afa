#pragma once

// Characteristics of the transport speed -u^2 and the identities they carry:
//
//   dPhi/dt = -u^2(t, Phi),   Phi(0, x) = x,
//   Phi_x(t, x)        = exp(-2 int_0^t u u_x(s, Phi(s, x)) ds),
//   rho(t, Phi(t, x))  = rho0(x) exp(int_0^t u u_x(s, Phi(s, x)) ds).
//
// Velocities off the grid come from the trigonometric interpolant of u in x
// and the cubic Hermite dense output in t.

#include <vector>

#include "novikov2c/simulate.hpp"

namespace novikov2c::diagnostics {

using system::Trajectory;

struct FlowMapOptions {
  /// RK4 substeps per stored dense interval.
  int substeps = 1;
};

struct FlowMap {
  std::vector<double> seeds;
  /// Record times (the dense nodes of the trajectory).
  std::vector<double> times;
  /// phi[i][q]: Phi(times[i], seeds[q]) in the lifted (unwrapped) coordinate.
  std::vector<std::vector<double>> phi;
  /// exponent[i][q]: int_0^t u u_x along the characteristic from seeds[q].
  std::vector<std::vector<double>> exponent;
  double period = 0.0;

  /// Number of times the characteristic has wrapped around the period.
  int winding(std::size_t i, std::size_t q) const;
  /// Jacobian from the exponential formula.
  double jacobian(std::size_t i, std::size_t q) const;
  /// Seeds sorted in x stay sorted at every record time.
  bool monotone() const;
};

/// Seeds must lie in [0, L); throws UsageError for trajectories without dense
/// output or seeds outside the domain.
FlowMap integrate_flow_map(const Trajectory& trajectory, std::vector<double> seeds,
                           const FlowMapOptions& options = {});

/// Uniformly spaced seeds xs, xs + h, ..., count of them.
std::vector<double> uniform_seeds(double first, double last, int count);

struct IdentityCheck {
  double max_rel_error = 0.0;
  int samples = 0;
  /// Seeds excluded from the comparison (density check: |rho0| below cutoff).
  std::vector<double> skipped_seeds;
  /// Samples where the interpolated density changed sign against rho0.
  int sign_changes = 0;
};

/// Centred finite differences of Phi across uniformly spaced seeds against the
/// exponential formula, on interior seeds only: the five-point stencil when
/// there are at least five seeds, otherwise three points. Requires three seeds.
IdentityCheck jacobian_check(const FlowMap& flow, const Trajectory& trajectory);

/// Density at Phi(t, x) by interpolating the stored rho against the formula.
IdentityCheck density_transport_check(const FlowMap& flow, const Trajectory& trajectory,
                                      double rho_cutoff = 1e-8);

}  // namespace novikov2c::diagnostics
