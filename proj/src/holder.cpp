#include "novikov2c/holder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "novikov2c/errors.hpp"
#include "novikov2c/littlewood_paley.hpp"

namespace novikov2c::diagnostics {

using system::SystemState;
using system::Trajectory;

std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw UsageError("line fit needs two or more points");
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw UsageError("line fit needs distinct abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

namespace {

double distance(const Trajectory& a, const Trajectory& b, const lp::DyadicFamily& family,
                double s_prime) {
  const std::size_t n = std::min(a.snapshots.size(), b.snapshots.size());
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = a.snapshots[i];
    const auto& y = b.snapshots[i];
    d = std::max(d, family.besov_norm(y.rho - x.rho, {s_prime - 1.0, 2.0, 1.0}) +
                        family.besov_norm(y.u - x.u, {s_prime, 2.0, 1.0}));
  }
  return d;
}

}  // namespace

HolderReport holder_dependence_probe(const SystemState& base, const SystemState& direction,
                                     const HolderOptions& options) {
  if (!(base.grid() == direction.grid())) {
    throw UsageError("perturbation direction must live on the base grid");
  }
  if (!(options.horizon > 0.0)) throw ConfigError("holder.horizon must be positive");
  double lo = INFINITY, hi = 0.0;
  for (double e : options.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw ConfigError("holder.epsilons must be >= 0");
    if (e > 0.0) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  if (!(hi > 0.0) || hi / lo < 100.0 * (1.0 - 1e-12)) {
    throw ConfigError("holder.epsilons must span at least two decades");
  }

  system::SolverConfig cfg = options.solver;
  cfg.t_end = options.horizon;
  cfg.snapshot_stride = 1;
  cfg.record_dense = false;
  cfg.besov_diagnostics = false;
  if (!cfg.dt) {
    const SystemState start = cfg.dealias
                                  ? SystemState(spectral::dealias(base.rho),
                                                spectral::dealias(base.u), base.t)
                                  : base;
    cfg.dt = system::auto_time_step(start, cfg.cfl);
  }

  const lp::DyadicFamily family(base.grid());
  const Trajectory reference = system::simulate(base, cfg);
  HolderReport report;
  report.base_status = std::string(system::to_string(reference.status));
  report.theta = options.s - options.s_prime;
  const bool base_complete = reference.status == system::HaltStatus::completed;

  std::vector<double> eps = options.epsilons;
  std::sort(eps.begin(), eps.end());
  std::vector<double> lx, ly;
  for (double e : eps) {
    HolderRow row;
    row.epsilon = e;
    if (e == 0.0) {
      row.status = report.base_status;
      row.excluded = true;
    } else {
      const SystemState data(base.rho + e * direction.rho, base.u + e * direction.u, base.t);
      const Trajectory run = system::simulate(data, cfg);
      row.status = std::string(system::to_string(run.status));
      row.distance = distance(reference, run, family, options.s_prime);
      row.excluded = !base_complete || run.status != system::HaltStatus::completed ||
                     !(row.distance > 0.0);
    }
    if (!report.rows.empty() && row.distance < report.rows.back().distance) {
      report.monotone = false;
    }
    if (!row.excluded) {
      lx.push_back(std::log(e));
      ly.push_back(std::log(row.distance));
    }
    report.rows.push_back(row);
  }
  report.fitted = static_cast<int>(lx.size());
  if (report.fitted >= 2) {
    const auto [slope, intercept] = fit_line(lx, ly);
    report.slope = slope;
    report.intercept = intercept;
  } else {
    report.slope = NAN;
    report.intercept = NAN;
  }
  return report;
}

}  // namespace novikov2c::diagnostics
