#pragma once

// Iterative construction of solutions by frozen-coefficient linear transport.
// Iterate n+1 solves
//
//   rho_t - u_n^2 rho_x = rho_n u_n (u_n)_x
//   u_t   - u_n^2 u_x   = (nonlocal forcing of the full system evaluated on iterate n)
//
// from the low-passed data (S_{n+1} rho0, S_{n+1} u0), starting at (S_1 rho0, S_1 u0).

#include <optional>
#include <vector>

#include "novikov2c/littlewood_paley.hpp"
#include "novikov2c/system.hpp"

namespace novikov2c::picard {

using system::SystemState;

struct PicardOptions {
  int n_max = 12;
  /// Integration horizon; std::nullopt selects the surrogate below.
  std::optional<double> horizon;
  /// Surrogate horizon is horizon_factor / (||rho0||_{B^{1/2}_{2,1}} + ||u0||_{B^{3/2}_{2,1}})^2.
  double horizon_factor = 0.1;
  /// Step size; std::nullopt uses cfl * dx / max(1, max u0^2) rounded so the
  /// horizon is an integer number of steps.
  std::optional<double> dt;
  double cfl = 0.3;
  bool dealias = true;
  /// An iterate whose critical norms exceed this multiple of the data's is
  /// reported as diverged and ends the sequence.
  double divergence_factor = 1e6;
  /// A_n at or below this fraction of the data's B^{-1/2}_{2,inf} x B^{1/2}_{2,inf}
  /// size counts as converged to rounding.
  double convergence_floor = 1e-12;

  void validate() const;
};

struct PicardReport {
  double horizon = 0.0;
  double horizon_surrogate = 0.0;
  double dt = 0.0;
  int steps = 0;
  /// Per iterate n = 1, 2, ...: sup over the horizon of the critical norms.
  std::vector<double> besov_rho;  ///< ||rho_n||_{B^{1/2}_{2,1}}
  std::vector<double> besov_u;    ///< ||u_n||_{B^{3/2}_{2,1}}
  /// U_n(T) = int_0^T ||u_n||^2_{B^{3/2}_{2,1}} dt (trapezoid).
  std::vector<double> u_integral;
  /// A_n = sup_t ||rho_{n+1} - rho_n||_{B^{-1/2}_{2,inf}} + ||u_{n+1} - u_n||_{B^{1/2}_{2,inf}}, n = 1, 2, ...
  std::vector<double> a;
  /// Absolute level below which A_n is rounding noise.
  double floor = 0.0;
  bool diverged = false;
  /// First iterate index whose A_n reached the floor.
  std::optional<int> converged_at;

  int iterates() const { return static_cast<int>(besov_rho.size()); }
};

struct PicardResult {
  PicardReport report;
  /// Last iterate at the horizon.
  SystemState final_iterate;
  /// Last iterate at every step node, time-ordered.
  std::vector<SystemState> final_path;
};

/// Default horizon heuristic standing in for the smallness condition on T.
double horizon_surrogate(const SystemState& initial, const lp::DyadicFamily& family,
                         double factor = 0.1);

PicardResult picard_sequence(const SystemState& initial, const PicardOptions& options = {});

}  // namespace novikov2c::picard
