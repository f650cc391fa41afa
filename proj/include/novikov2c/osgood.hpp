#pragma once

// Osgood-type envelope for rho' <= gamma(t) mu(rho) with mu(r) = r (1 - ln r).
//
// Integrating the equality case exactly gives
//   rho(t) = exp(1 - (1 - ln c) e^{-Gamma(t)}),  Gamma(t) = int_0^t gamma,
// which we call the full bound. It factors as e^{1 - e^{-Gamma}} c^{e^{-Gamma}};
// the second factor alone, c^{e^{-Gamma}}, is the simplified bound. The two agree
// at t = 0 and the simplified one is smaller for Gamma > 0.

#include <vector>

namespace novikov2c::diagnostics {

/// mu(r) = r (1 - ln r), with mu(0) = 0.
double osgood_modulus(double r);

struct OsgoodSeries {
  double c = 0.0;
  std::vector<double> t;
  std::vector<double> gamma_integral;
  std::vector<double> bound;       ///< full bound
  std::vector<double> simplified;  ///< c^{exp(-Gamma)}
  /// RK4 solution of rho' = gamma mu(rho), rho(0) = c.
  std::vector<double> ode;
  /// max over t of ode / bound - 1 (and likewise for the simplified bound).
  double excess_over_bound = 0.0;
  double excess_over_simplified = 0.0;
  /// ode <= bound * (1 + tolerance) everywhere.
  bool companion_ok = true;
};

/// gamma sampled on the increasing grid t (same length, gamma >= 0, t[0] the
/// start time). Gamma is accumulated by the trapezoid rule; the ODE is solved
/// with `substeps` RK4 steps per interval and gamma linear in between.
/// Throws DomainError unless 0 <= c < 1.
OsgoodSeries osgood_envelope(double c, const std::vector<double>& gamma,
                             const std::vector<double>& t, int substeps = 16,
                             double tolerance = 1e-6);

/// Both closed forms at a single value of Gamma.
double osgood_bound(double c, double gamma_integral);
double osgood_simplified_bound(double c, double gamma_integral);

}  // namespace novikov2c::diagnostics
