#include "novikov2c/osgood.hpp"

#include <algorithm>
#include <cmath>

#include "novikov2c/errors.hpp"

namespace novikov2c::diagnostics {

double osgood_modulus(double r) { return r > 0.0 ? r * (1.0 - std::log(r)) : 0.0; }

double osgood_bound(double c, double gamma_integral) {
  if (c == 0.0) return 0.0;
  return std::exp(1.0 - (1.0 - std::log(c)) * std::exp(-gamma_integral));
}

double osgood_simplified_bound(double c, double gamma_integral) {
  if (c == 0.0) return 0.0;
  return std::pow(c, std::exp(-gamma_integral));
}

namespace {

double excess(double value, double bound) {
  if (bound == 0.0) return value == 0.0 ? 0.0 : INFINITY;
  return value / bound - 1.0;
}

}  // namespace

OsgoodSeries osgood_envelope(double c, const std::vector<double>& gamma,
                             const std::vector<double>& t, int substeps, double tolerance) {
  if (!(c >= 0.0 && c < 1.0)) {
    throw DomainError("osgood envelope needs 0 <= c < 1 (the modulus changes sign at 1)");
  }
  if (t.empty() || gamma.size() != t.size()) {
    throw UsageError("gamma must be sampled on the time grid");
  }
  if (substeps < 1) throw UsageError("substeps must be positive");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(gamma[i] >= 0.0)) throw DomainError("gamma must be nonnegative");
    if (i > 0 && !(t[i] > t[i - 1])) throw UsageError("time grid must be increasing");
  }

  OsgoodSeries out;
  out.c = c;
  out.t = t;
  double big_gamma = 0.0;
  double rho = c;
  out.excess_over_bound = -INFINITY;
  out.excess_over_simplified = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) {
      const double h = t[i] - t[i - 1];
      big_gamma += 0.5 * h * (gamma[i - 1] + gamma[i]);
      const double dh = h / substeps;
      auto g = [&](double s) { return gamma[i - 1] + (gamma[i] - gamma[i - 1]) * (s / h); };
      for (int k = 0; k < substeps; ++k) {
        const double s = k * dh;
        const double k1 = g(s) * osgood_modulus(rho);
        const double k2 = g(s + 0.5 * dh) * osgood_modulus(rho + 0.5 * dh * k1);
        const double k3 = g(s + 0.5 * dh) * osgood_modulus(rho + 0.5 * dh * k2);
        const double k4 = g(s + dh) * osgood_modulus(rho + dh * k3);
        rho += dh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    out.gamma_integral.push_back(big_gamma);
    out.bound.push_back(osgood_bound(c, big_gamma));
    out.simplified.push_back(osgood_simplified_bound(c, big_gamma));
    out.ode.push_back(rho);
    out.excess_over_bound = std::max(out.excess_over_bound, excess(rho, out.bound.back()));
    out.excess_over_simplified =
        std::max(out.excess_over_simplified, excess(rho, out.simplified.back()));
    if (rho > out.bound.back() * (1.0 + tolerance)) out.companion_ok = false;
  }
  return out;
}

}  // namespace novikov2c::diagnostics
