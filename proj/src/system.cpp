#include "novikov2c/system.hpp"

#include "novikov2c/errors.hpp"

namespace novikov2c::system {

using spectral::Complex;
using spectral::HalfSpectrum;

namespace {

RealField mul(const RealField& a, const RealField& b, bool dealias) {
  return dealias ? spectral::dealiased_product(a, b) : a * b;
}

}  // namespace

SystemState::SystemState(RealField rho_, RealField u_, double t_)
    : rho(std::move(rho_)), u(std::move(u_)), t(t_) {
  if (!(rho.grid() == u.grid())) throw UsageError("rho and u must share one grid");
}

SystemState SystemState::zero(const Grid& grid, double t) {
  return SystemState(RealField(grid), RealField(grid), t);
}

RealField SystemState::momentum() const { return u - spectral::derivative(u, 2); }

TransportCoefficients transport_coefficients(const RealField& rho, const RealField& u,
                                             bool dealias) {
  const Grid& g = u.grid();
  const RealField ux = spectral::derivative(u, 1);
  const RealField u2 = mul(u, u, dealias);
  const RealField ux2 = mul(ux, ux, dealias);
  const RealField rho2 = mul(rho, rho, dealias);

  RealField force_rho = mul(mul(rho, u, dealias), ux, dealias);

  // Nonlocal part: d_x G * A + 1/2 G * B assembled with one inverse transform.
  RealField a = mul(u2, u, dealias) + 1.5 * mul(u, ux2, dealias) - 0.5 * mul(u, rho2, dealias);
  RealField b = mul(ux, ux2, dealias) - mul(ux, rho2, dealias);
  HalfSpectrum sa = spectral::half_spectrum(a);
  const HalfSpectrum sb = spectral::half_spectrum(b);
  const int nyq = g.size() / 2;
  for (int k = 0; k < static_cast<int>(sa.size()); ++k) {
    const double xi = g.half_wavenumber(k);
    const double green = 1.0 / (1.0 + xi * xi);
    const Complex d = (k == nyq) ? Complex(0.0) : Complex(0.0, xi * green);
    sa[k] = d * sa[k] + 0.5 * green * sb[k];
  }
  RealField force_u = spectral::from_half_spectrum(g, std::move(sa));
  return {u2, std::move(force_rho), std::move(force_u)};
}

Tendency transport_rhs(const TransportCoefficients& c, const RealField& rho, const RealField& u,
                       bool dealias) {
  RealField drho = mul(c.speed2, spectral::derivative(rho, 1), dealias);
  drho += c.force_rho;
  RealField du = mul(c.speed2, spectral::derivative(u, 1), dealias);
  du += c.force_u;
  return {std::move(drho), std::move(du)};
}

Tendency rhs_hyperbolic(const SystemState& state, bool dealias) {
  const TransportCoefficients c = transport_coefficients(state.rho, state.u, dealias);
  return transport_rhs(c, state.rho, state.u, dealias);
}

RealField rhs_momentum_form(const SystemState& state, bool dealias) {
  const RealField& u = state.u;
  const RealField& rho = state.rho;
  const RealField ux = spectral::derivative(u, 1);
  const RealField m = state.momentum();
  const RealField mx = spectral::derivative(m, 1);
  RealField out = 3.0 * mul(mul(ux, u, dealias), m, dealias);
  out += mul(mul(u, u, dealias), mx, dealias);
  out -= mul(rho, spectral::derivative(mul(u, rho, dealias), 1), dealias);
  return out;
}

std::optional<SystemState> step_rk4(const SystemState& state, double dt, bool dealias) {
  if (!(dt > 0.0)) throw UsageError("time step must be positive");
  return rk4_step(state, dt, [dealias](double, const RealField& rho, const RealField& u) {
    return rhs_hyperbolic(SystemState(rho, u), dealias);
  });
}

}  // namespace novikov2c::system
