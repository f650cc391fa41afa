#pragma once

// Empirical continuity of the data-to-solution map: the distance between the
// base run and runs from base + eps * direction, in a weaker Besov pair.

#include <string>
#include <vector>

#include "novikov2c/simulate.hpp"

namespace novikov2c::diagnostics {

struct HolderOptions {
  std::vector<double> epsilons;
  double horizon = 0.5;
  /// Distance measured in B^{s'-1}_{2,1} x B^{s'}_{2,1}.
  double s_prime = 0.5;
  /// Regularity index of the data; theta = s - s_prime is reported alongside the fit.
  double s = 1.5;
  /// Solver settings shared by every run. An automatic step is replaced by the
  /// base run's initial step so that all runs share one time grid.
  system::SolverConfig solver;
};

struct HolderRow {
  double epsilon = 0.0;
  /// sup over the horizon of the distance to the base run.
  double distance = 0.0;
  /// Halted before the horizon, or epsilon == 0: kept in the table, not fitted.
  bool excluded = false;
  std::string status;
};

struct HolderReport {
  std::vector<HolderRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  int fitted = 0;
  /// distance nondecreasing in epsilon over the rows (sorted by epsilon).
  bool monotone = true;
  double theta = 0.0;
  std::string base_status;
};

/// Throws ConfigError unless the nonzero epsilons span at least two decades.
HolderReport holder_dependence_probe(const system::SystemState& base,
                                     const system::SystemState& direction,
                                     const HolderOptions& options);

/// Least-squares slope and intercept of y against x.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace novikov2c::diagnostics
