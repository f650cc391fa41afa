#pragma once

// Right-hand sides of the two-component Novikov system and its explicit time
// integrator. With G = e^{-|x|}/2 the kernel of (1 - d_xx)^{-1}:
//
//   rho_t = rho_x u^2 + rho u u_x
//   u_t   = u^2 u_x + d_x G * (u^3 + 3/2 u u_x^2 - 1/2 u rho^2)
//                   + 1/2 G * (u_x^3 - u_x rho^2)
//
// and, in momentum form with m = u - u_xx,
//
//   m_t = 3 u_x u m + u^2 m_x - rho (u rho)_x.

#include <optional>

#include "novikov2c/spectral.hpp"

namespace novikov2c::system {

using spectral::Grid;
using spectral::RealField;

struct SystemState {
  RealField rho;
  RealField u;
  double t = 0.0;

  SystemState(RealField rho_, RealField u_, double t_ = 0.0);
  static SystemState zero(const Grid& grid, double t = 0.0);

  const Grid& grid() const { return u.grid(); }
  bool all_finite() const { return rho.all_finite() && u.all_finite(); }
  /// m = u - u_xx.
  RealField momentum() const;
};

struct Tendency {
  RealField rho;
  RealField u;
};

/// Frozen-coefficient form of the hyperbolic system: both components obey
/// f_t = speed2 * f_x + forcing. For the nonlinear system speed2 = u^2.
struct TransportCoefficients {
  RealField speed2;
  RealField force_rho;
  RealField force_u;
};

/// Builds speed and forcings from (rho, u). Every pointwise product is
/// dealiased when `dealias` is set.
TransportCoefficients transport_coefficients(const RealField& rho, const RealField& u,
                                             bool dealias = true);

/// Transport tendency speed2 * f_x + forcing for both components of (rho, u).
Tendency transport_rhs(const TransportCoefficients& c, const RealField& rho, const RealField& u,
                       bool dealias = true);

Tendency rhs_hyperbolic(const SystemState& state, bool dealias = true);
RealField rhs_momentum_form(const SystemState& state, bool dealias = true);

/// One classical RK4 step of the hyperbolic system; std::nullopt when any
/// stage produced a non-finite value.
std::optional<SystemState> step_rk4(const SystemState& state, double dt, bool dealias = true);

/// Generic RK4 step for a tendency functor `rhs(t, rho, u) -> Tendency`.
template <class Rhs>
std::optional<SystemState> rk4_step(const SystemState& s, double dt, Rhs&& rhs) {
  const double t = s.t;
  const Tendency k1 = rhs(t, s.rho, s.u);
  const Tendency k2 = rhs(t + 0.5 * dt, s.rho + (0.5 * dt) * k1.rho, s.u + (0.5 * dt) * k1.u);
  const Tendency k3 = rhs(t + 0.5 * dt, s.rho + (0.5 * dt) * k2.rho, s.u + (0.5 * dt) * k2.u);
  const Tendency k4 = rhs(t + dt, s.rho + dt * k3.rho, s.u + dt * k3.u);
  RealField rho = s.rho;
  RealField u = s.u;
  const double w = dt / 6.0;
  for (int i = 0; i < rho.size(); ++i) {
    rho[i] += w * (k1.rho[i] + 2.0 * k2.rho[i] + 2.0 * k3.rho[i] + k4.rho[i]);
    u[i] += w * (k1.u[i] + 2.0 * k2.u[i] + 2.0 * k3.u[i] + k4.u[i]);
  }
  SystemState next(std::move(rho), std::move(u), t + dt);
  if (!next.all_finite()) return std::nullopt;
  return next;
}

}  // namespace novikov2c::system
