#pragma once

// Initial-data library. Profiles are centred on the domain midpoint unless a
// centre is given, and use the minimal periodic distance to the centre.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "novikov2c/system.hpp"

namespace novikov2c::scenario {

using spectral::Grid;
using spectral::RealField;
using system::SystemState;

/// amplitude * exp(-((x - center) / width)^2)
struct GaussianProfile {
  double amplitude = 0.0;
  double width = 1.0;
  std::optional<double> center;
};

struct Gaussian {
  GaussianProfile rho;
  GaussianProfile u;
};

/// sqrt(c) e^{-|x - center|} convolved with a centred normal density of
/// standard deviation delta; delta = 0 is the exact (non-smooth) peakon.
struct Peakon {
  double c = 1.0;
  double delta = 0.05;
  std::optional<double> center;
};

struct TwoPeakon {
  double c1 = 1.0;
  double c2 = 0.5;
  double separation = 8.0;
  double delta = 0.05;
  std::optional<double> center;
};

/// u0 = slope * y * exp(-(y / width)^2), rho0 = rho_amplitude * exp(-(y / width)^2),
/// y = x - center. The slope of u0 at the centre equals `slope`.
struct AntisymmetricSteep {
  double slope = 2.0;
  double width = 1.0;
  double rho_amplitude = 0.5;
  std::optional<double> center;
};

/// Node values, one per grid point.
struct Custom {
  std::vector<double> rho;
  std::vector<double> u;
};

using ScenarioSpec = std::variant<Gaussian, Peakon, TwoPeakon, AntisymmetricSteep, Custom>;

enum class NonSmoothPolicy { reject, warn };

struct ScenarioPolicy {
  /// Largest magnitude tolerated within 10% of the domain boundary.
  double boundary_tolerance = 1e-10;
  NonSmoothPolicy non_smooth = NonSmoothPolicy::reject;
  /// Spectra decaying at algebraic order below this count as non-smooth.
  double min_decay_order = 2.0;
};

struct Scenario {
  SystemState state;
  std::vector<std::string> warnings;
};

/// Throws ConfigError on boundary-negligibility violations (naming the field)
/// and, under the reject policy, on non-smooth data.
Scenario make_scenario(const Grid& grid, const ScenarioSpec& spec, const ScenarioPolicy& policy = {});

/// Mollified peakon profile value at signed distance y from the crest.
double mollified_peakon(double y, double c, double delta);

/// Estimated algebraic decay order p of |f^(k)| ~ k^{-p}, from octave maxima
/// above the rounding floor. Returns +infinity when the spectrum drops to the
/// floor within two octaves.
double spectral_decay_order(const RealField& f);

/// Largest |f| over nodes within `fraction` of the domain boundary.
double boundary_magnitude(const RealField& f, double fraction = 0.1);

std::string scenario_name(const ScenarioSpec& spec);

}  // namespace novikov2c::scenario
