#include "novikov2c/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "novikov2c/errors.hpp"
#include "novikov2c/simulate.hpp"

namespace novikov2c::picard {

using spectral::RealField;
using system::DenseNode;
using system::Tendency;
using system::TransportCoefficients;

void PicardOptions::validate() const {
  if (n_max < 1) throw ConfigError("picard.n_max must be >= 1");
  if (horizon && !(*horizon > 0.0)) throw ConfigError("picard.horizon must be positive");
  if (!(horizon_factor > 0.0)) throw ConfigError("picard.horizon_factor must be positive");
  if (dt && !(*dt > 0.0)) throw ConfigError("picard.dt must be positive");
  if (!(cfl > 0.0)) throw ConfigError("picard.cfl must be positive");
  if (!(divergence_factor > 1.0)) throw ConfigError("picard.divergence_factor must exceed 1");
  if (!(convergence_floor >= 0.0)) throw ConfigError("picard.convergence_floor must be >= 0");
}

double horizon_surrogate(const SystemState& initial, const lp::DyadicFamily& family,
                         double factor) {
  const double size = family.besov_norm(initial.rho, {0.5, 2.0, 1.0}) +
                      family.besov_norm(initial.u, {1.5, 2.0, 1.0});
  if (size == 0.0) return std::numeric_limits<double>::infinity();
  return factor / (size * size);
}

namespace {

using Path = std::vector<DenseNode>;

DenseNode node_of(const SystemState& s, const Tendency& d) {
  return {s.t, s.rho, s.u, d.rho, d.u};
}

// Iterate 1: the low-passed data held constant in time.
Path constant_path(const SystemState& data, const std::vector<double>& times) {
  Path p;
  p.reserve(times.size());
  const RealField zero(data.grid());
  for (double t : times) p.push_back({t, data.rho, data.u, zero, zero});
  return p;
}

TransportCoefficients coefficients_at(const DenseNode& n, bool dealias) {
  return system::transport_coefficients(n.rho, n.u, dealias);
}

// Solves the linear transport problem with coefficients frozen on `prev`.
std::optional<Path> next_iterate(const Path& prev, const SystemState& data, double dt,
                                 bool dealias) {
  Path out;
  out.reserve(prev.size());
  TransportCoefficients c0 = coefficients_at(prev.front(), dealias);
  SystemState state = data;
  state.t = prev.front().t;
  out.push_back(node_of(state, system::transport_rhs(c0, state.rho, state.u, dealias)));

  for (std::size_t k = 0; k + 1 < prev.size(); ++k) {
    const double tm = prev[k].t + 0.5 * (prev[k + 1].t - prev[k].t);
    const SystemState mid = system::hermite(prev[k], prev[k + 1], tm);
    const TransportCoefficients cm = system::transport_coefficients(mid.rho, mid.u, dealias);
    TransportCoefficients c1 = coefficients_at(prev[k + 1], dealias);
    const TransportCoefficients* stages[4] = {&c0, &cm, &cm, &c1};
    int call = 0;
    std::optional<SystemState> next =
        system::rk4_step(state, dt, [&](double, const RealField& rho, const RealField& u) {
          return system::transport_rhs(*stages[call++], rho, u, dealias);
        });
    if (!next) return std::nullopt;
    state = std::move(*next);
    state.t = prev[k + 1].t;
    out.push_back(node_of(state, system::transport_rhs(c1, state.rho, state.u, dealias)));
    c0 = std::move(c1);
  }
  return out;
}

struct PathNorms {
  double rho = 0.0;
  double u = 0.0;
  double u_integral = 0.0;
};

PathNorms critical_norms(const Path& p, const lp::DyadicFamily& family) {
  PathNorms n;
  double prev = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    n.rho = std::max(n.rho, family.besov_norm(p[k].rho, {0.5, 2.0, 1.0}));
    const double bu = family.besov_norm(p[k].u, {1.5, 2.0, 1.0});
    n.u = std::max(n.u, bu);
    if (k > 0) n.u_integral += 0.5 * (p[k].t - p[k - 1].t) * (prev * prev + bu * bu);
    prev = bu;
  }
  return n;
}

double weak_size(const RealField& rho, const RealField& u, const lp::DyadicFamily& family) {
  return family.besov_norm(rho, {-0.5, 2.0, lp::BesovIndex::infinity}) +
         family.besov_norm(u, {0.5, 2.0, lp::BesovIndex::infinity});
}

double successive_gap(const Path& a, const Path& b, const lp::DyadicFamily& family) {
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    gap = std::max(gap, weak_size(b[k].rho - a[k].rho, b[k].u - a[k].u, family));
  }
  return gap;
}

}  // namespace

PicardResult picard_sequence(const SystemState& initial, const PicardOptions& options) {
  options.validate();
  const spectral::Grid& grid = initial.grid();
  const lp::DyadicFamily family(grid);

  PicardReport report;
  report.horizon_surrogate = horizon_surrogate(initial, family, options.horizon_factor);
  report.horizon = options.horizon.value_or(report.horizon_surrogate);
  if (!std::isfinite(report.horizon)) report.horizon = 1.0;  // zero data: any horizon works

  const double dt_max =
      options.dt.value_or(system::auto_time_step(initial, options.cfl));
  report.steps = std::max(1, static_cast<int>(std::ceil(report.horizon / dt_max - 1e-9)));
  report.dt = report.horizon / report.steps;

  std::vector<double> times(report.steps + 1);
  for (int k = 0; k <= report.steps; ++k) times[k] = initial.t + k * report.dt;
  times.back() = initial.t + report.horizon;

  auto data_at = [&](int level) {
    RealField rho = family.low_cutoff(level, initial.rho);
    RealField u = family.low_cutoff(level, initial.u);
    if (options.dealias) {
      rho = spectral::dealias(rho);
      u = spectral::dealias(u);
    }
    return SystemState(std::move(rho), std::move(u), initial.t);
  };

  const double data_critical = family.besov_norm(initial.rho, {0.5, 2.0, 1.0}) +
                               family.besov_norm(initial.u, {1.5, 2.0, 1.0});
  report.floor = options.convergence_floor * weak_size(initial.rho, initial.u, family);

  Path current = constant_path(data_at(1), times);
  auto record = [&](const Path& p) {
    const PathNorms n = critical_norms(p, family);
    report.besov_rho.push_back(n.rho);
    report.besov_u.push_back(n.u);
    report.u_integral.push_back(n.u_integral);
    return n;
  };
  record(current);

  for (int n = 1; n < options.n_max; ++n) {
    std::optional<Path> next = next_iterate(current, data_at(n + 1), report.dt, options.dealias);
    if (!next) {
      report.diverged = true;
      break;
    }
    const PathNorms norms = record(*next);
    const double gap = successive_gap(current, *next, family);
    report.a.push_back(gap);
    if (!report.converged_at && gap <= report.floor) report.converged_at = n;
    current = std::move(*next);
    const double size = norms.rho + norms.u;
    if (!std::isfinite(size) || !std::isfinite(gap) ||
        (data_critical > 0.0 && size > options.divergence_factor * data_critical)) {
      report.diverged = true;
      break;
    }
  }

  std::vector<SystemState> path;
  path.reserve(current.size());
  for (const DenseNode& d : current) path.emplace_back(d.rho, d.u, d.t);
  SystemState last = path.back();
  return {std::move(report), std::move(last), std::move(path)};
}

}  // namespace novikov2c::picard
