#include "novikov2c/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "novikov2c/errors.hpp"

namespace novikov2c::scenario {

namespace {

/// Signed minimal-image distance from x to c on a torus of length L.
double periodic_offset(double x, double c, double L) {
  double y = std::fmod(x - c, L);
  if (y >= 0.5 * L) y -= L;
  if (y < -0.5 * L) y += L;
  return y;
}

double center_or_mid(const std::optional<double>& c, const Grid& g) {
  return c.value_or(0.5 * g.length());
}

RealField gaussian_field(const Grid& g, const GaussianProfile& p) {
  if (!(p.width > 0.0)) throw ConfigError("gaussian width must be positive");
  const double c = center_or_mid(p.center, g);
  return RealField::from_function(g, [&](double x) {
    const double y = periodic_offset(x, c, g.length()) / p.width;
    return p.amplitude * std::exp(-y * y);
  });
}

// exp(a) * erfc(z) without overflowing exp(a) when erfc(z) underflows.
double exp_erfc(double a, double z) {
  const double e = std::erfc(z);
  if (e == 0.0) return 0.0;
  return std::exp(a + std::log(e));
}

RealField peakon_field(const Grid& g, double c, double delta, double center) {
  if (!(c > 0.0)) throw ConfigError("peakon speed c must be positive");
  if (!(delta >= 0.0)) throw ConfigError("peakon mollification delta must be nonnegative");
  return RealField::from_function(g, [&](double x) {
    return mollified_peakon(periodic_offset(x, center, g.length()), c, delta);
  });
}

struct Build {
  RealField rho;
  RealField u;
  bool analytically_rough = false;
};

Build build(const Grid& g, const ScenarioSpec& spec) {
  return std::visit(
      [&](const auto& s) -> Build {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return {gaussian_field(g, s.rho), gaussian_field(g, s.u)};
        } else if constexpr (std::is_same_v<T, Peakon>) {
          return {RealField(g), peakon_field(g, s.c, s.delta, center_or_mid(s.center, g)),
                  s.delta == 0.0};
        } else if constexpr (std::is_same_v<T, TwoPeakon>) {
          const double mid = center_or_mid(s.center, g);
          RealField u = peakon_field(g, s.c1, s.delta, mid - 0.5 * s.separation);
          u += peakon_field(g, s.c2, s.delta, mid + 0.5 * s.separation);
          return {RealField(g), std::move(u), s.delta == 0.0};
        } else if constexpr (std::is_same_v<T, AntisymmetricSteep>) {
          if (!(s.width > 0.0)) throw ConfigError("antisymmetric_steep width must be positive");
          const double c = center_or_mid(s.center, g);
          RealField u = RealField::from_function(g, [&](double x) {
            const double y = periodic_offset(x, c, g.length());
            const double z = y / s.width;
            return s.slope * y * std::exp(-z * z);
          });
          RealField rho = RealField::from_function(g, [&](double x) {
            const double z = periodic_offset(x, c, g.length()) / s.width;
            return s.rho_amplitude * std::exp(-z * z);
          });
          return {std::move(rho), std::move(u)};
        } else {
          if (static_cast<int>(s.rho.size()) != g.size() ||
              static_cast<int>(s.u.size()) != g.size()) {
            throw ConfigError("custom scenario tables must have one value per grid node (" +
                              std::to_string(g.size()) + ")");
          }
          return {RealField(g, s.rho), RealField(g, s.u)};
        }
      },
      spec);
}

}  // namespace

double mollified_peakon(double y, double c, double delta) {
  const double amp = std::sqrt(c);
  if (delta == 0.0) return amp * std::exp(-std::abs(y));
  // e^{-|.|} * N(0, delta^2) in closed form.
  const double d2 = delta * delta;
  const double root2d = std::numbers::sqrt2 * delta;
  const double left = exp_erfc(0.5 * d2 - y, (d2 - y) / root2d);
  const double right = exp_erfc(0.5 * d2 + y, (d2 + y) / root2d);
  return amp * 0.5 * (left + right);
}

double spectral_decay_order(const RealField& f) {
  const spectral::HalfSpectrum s = spectral::half_spectrum(f);
  double peak = 0.0;
  for (const auto& z : s) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  const double floor = 1e-10 * peak;
  const int nyq = f.grid().size() / 2;

  std::vector<double> envelope;
  for (int lo = 4; lo < nyq; lo *= 2) {
    double a = 0.0;
    for (int k = lo; k < std::min(2 * lo, nyq); ++k) a = std::max(a, std::abs(s[k]));
    envelope.push_back(a);
  }
  for (double a : envelope) {
    if (a <= floor) return std::numeric_limits<double>::infinity();
  }
  if (envelope.size() < 2) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  int count = 0;
  for (std::size_t o = envelope.size() - 1; o >= 1 && count < 3; --o, ++count) {
    sum += std::log2(envelope[o - 1] / envelope[o]);
  }
  return sum / count;
}

double boundary_magnitude(const RealField& f, double fraction) {
  const Grid& g = f.grid();
  const double band = fraction * g.length();
  double m = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    if (x < band || x > g.length() - band) m = std::max(m, std::abs(f[i]));
  }
  return m;
}

Scenario make_scenario(const Grid& grid, const ScenarioSpec& spec, const ScenarioPolicy& policy) {
  Build b = build(grid, spec);
  if (!b.rho.all_finite() || !b.u.all_finite()) {
    throw ConfigError("scenario produced non-finite initial data");
  }
  for (const auto& [name, field] : {std::pair<const char*, const RealField*>{"rho", &b.rho},
                                    std::pair<const char*, const RealField*>{"u", &b.u}}) {
    const double edge = boundary_magnitude(*field);
    if (edge >= policy.boundary_tolerance) {
      std::ostringstream msg;
      msg << "boundary-negligibility violated by field '" << name << "': |" << name
          << "| reaches " << edge << " within 10% of the domain boundary (tolerance "
          << policy.boundary_tolerance << ")";
      throw ConfigError(msg.str());
    }
  }

  std::vector<std::string> warnings;
  for (const auto& [name, field] : {std::pair<const char*, const RealField*>{"rho", &b.rho},
                                    std::pair<const char*, const RealField*>{"u", &b.u}}) {
    const double order = spectral_decay_order(*field);
    const bool rough = order < policy.min_decay_order || (b.analytically_rough && name[0] == 'u');
    if (!rough) continue;
    std::ostringstream msg;
    msg << "non-smooth data: field '" << name << "' spectrum decays at algebraic order " << order;
    if (b.analytically_rough) msg << " (unmollified peakon)";
    if (policy.non_smooth == NonSmoothPolicy::reject) throw ConfigError(msg.str());
    warnings.push_back(msg.str());
  }
  return {SystemState(std::move(b.rho), std::move(b.u)), std::move(warnings)};
}

std::string scenario_name(const ScenarioSpec& spec) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Gaussian>) return "gaussian";
        if constexpr (std::is_same_v<T, Peakon>) return "peakon";
        if constexpr (std::is_same_v<T, TwoPeakon>) return "two_peakon";
        if constexpr (std::is_same_v<T, AntisymmetricSteep>) return "antisymmetric_steep";
        return "custom";
      },
      spec);
}

}  // namespace novikov2c::scenario
