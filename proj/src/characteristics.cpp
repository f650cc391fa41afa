#include "novikov2c/characteristics.hpp"

#include <algorithm>
#include <cmath>

#include "novikov2c/errors.hpp"

namespace novikov2c::diagnostics {

using spectral::TrigInterpolant;

int FlowMap::winding(std::size_t i, std::size_t q) const {
  return static_cast<int>(std::floor(phi[i][q] / period));
}

double FlowMap::jacobian(std::size_t i, std::size_t q) const {
  return std::exp(-2.0 * exponent[i][q]);
}

bool FlowMap::monotone() const {
  for (const auto& row : phi) {
    for (std::size_t q = 1; q < row.size(); ++q) {
      if (!(row[q] > row[q - 1])) return false;
    }
  }
  return true;
}

std::vector<double> uniform_seeds(double first, double last, int count) {
  if (count < 1) throw UsageError("seed count must be positive");
  std::vector<double> s(count);
  const double h = count > 1 ? (last - first) / (count - 1) : 0.0;
  for (int q = 0; q < count; ++q) s[q] = first + q * h;
  return s;
}

namespace {

// Interpolants of u at one time instant.
struct VelocitySlice {
  TrigInterpolant u;

  // (-u^2, u u_x) at x.
  std::pair<double, double> eval(double x) const {
    const auto [v, s] = u.value_and_slope(x);
    return {-v * v, v * s};
  }
};

VelocitySlice slice_at(const Trajectory& traj, std::size_t interval, double t) {
  const auto& a = traj.dense[interval];
  const auto& b = traj.dense[interval + 1];
  if (t == a.t) return {TrigInterpolant(a.u)};
  if (t == b.t) return {TrigInterpolant(b.u)};
  return {TrigInterpolant(system::hermite(a, b, t).u)};
}

}  // namespace

FlowMap integrate_flow_map(const Trajectory& trajectory, std::vector<double> seeds,
                           const FlowMapOptions& options) {
  if (trajectory.dense.size() < 2) {
    throw UsageError("flow map needs a trajectory recorded with dense output");
  }
  if (options.substeps < 1) throw UsageError("flow map substeps must be positive");
  const double L = trajectory.grid.length();
  for (double x : seeds) {
    if (!(x >= 0.0 && x < L)) throw UsageError("seed " + std::to_string(x) + " outside [0, L)");
  }

  FlowMap flow;
  flow.period = L;
  flow.seeds = seeds;
  const std::size_t nq = seeds.size();
  std::vector<double> phi = seeds;
  std::vector<double> expo(nq, 0.0);
  flow.times.push_back(trajectory.dense.front().t);
  flow.phi.push_back(phi);
  flow.exponent.push_back(expo);

  const int m = options.substeps;
  for (std::size_t i = 0; i + 1 < trajectory.dense.size(); ++i) {
    const double t0 = trajectory.dense[i].t;
    const double h = (trajectory.dense[i + 1].t - t0) / m;
    VelocitySlice start = slice_at(trajectory, i, t0);
    for (int sub = 0; sub < m; ++sub) {
      const double ta = t0 + sub * h;
      const double tb = (sub + 1 == m) ? trajectory.dense[i + 1].t : ta + h;
      const VelocitySlice mid = slice_at(trajectory, i, ta + 0.5 * h);
      VelocitySlice end = slice_at(trajectory, i, tb);
      for (std::size_t q = 0; q < nq; ++q) {
        const auto k1 = start.eval(phi[q]);
        const auto k2 = mid.eval(phi[q] + 0.5 * h * k1.first);
        const auto k3 = mid.eval(phi[q] + 0.5 * h * k2.first);
        const auto k4 = end.eval(phi[q] + h * k3.first);
        phi[q] += h / 6.0 * (k1.first + 2.0 * k2.first + 2.0 * k3.first + k4.first);
        expo[q] += h / 6.0 * (k1.second + 2.0 * k2.second + 2.0 * k3.second + k4.second);
      }
      start = std::move(end);
    }
    flow.times.push_back(trajectory.dense[i + 1].t);
    flow.phi.push_back(phi);
    flow.exponent.push_back(expo);
  }
  return flow;
}

IdentityCheck jacobian_check(const FlowMap& flow, const Trajectory& trajectory) {
  const std::size_t nq = flow.seeds.size();
  if (nq < 3) throw UsageError("jacobian check needs at least three seeds");
  if (!flow.times.empty() && flow.times.back() > trajectory.t_end()) {
    throw UsageError("flow map extends beyond the trajectory");
  }
  const double h = flow.seeds[1] - flow.seeds[0];
  for (std::size_t q = 2; q < nq; ++q) {
    const double hq = flow.seeds[q] - flow.seeds[q - 1];
    if (std::abs(hq - h) > 1e-9 * std::abs(h)) {
      throw UsageError("jacobian check needs uniformly spaced seeds");
    }
  }
  const bool five = nq >= 5;
  const std::size_t lo = five ? 2 : 1;
  IdentityCheck out;
  for (std::size_t i = 0; i < flow.times.size(); ++i) {
    const auto& p = flow.phi[i];
    for (std::size_t q = lo; q + lo < nq; ++q) {
      const double fd = five ? (p[q - 2] - 8.0 * p[q - 1] + 8.0 * p[q + 1] - p[q + 2]) / (12.0 * h)
                             : (p[q + 1] - p[q - 1]) / (2.0 * h);
      const double exact = flow.jacobian(i, q);
      out.max_rel_error = std::max(out.max_rel_error, std::abs(fd - exact) / std::abs(exact));
      ++out.samples;
    }
  }
  return out;
}

IdentityCheck density_transport_check(const FlowMap& flow, const Trajectory& trajectory,
                                      double rho_cutoff) {
  if (trajectory.dense.size() != flow.times.size()) {
    throw UsageError("flow map and trajectory record different times");
  }
  IdentityCheck out;
  const TrigInterpolant rho0(trajectory.dense.front().rho);
  std::vector<double> initial(flow.seeds.size());
  std::vector<bool> active(flow.seeds.size());
  for (std::size_t q = 0; q < flow.seeds.size(); ++q) {
    initial[q] = rho0(flow.seeds[q]);
    active[q] = std::abs(initial[q]) >= rho_cutoff;
    if (!active[q]) out.skipped_seeds.push_back(flow.seeds[q]);
  }
  for (std::size_t i = 0; i < flow.times.size(); ++i) {
    const TrigInterpolant rho(trajectory.dense[i].rho);
    for (std::size_t q = 0; q < flow.seeds.size(); ++q) {
      if (!active[q]) continue;
      const double numeric = rho(flow.phi[i][q]);
      const double exact = initial[q] * std::exp(flow.exponent[i][q]);
      out.max_rel_error = std::max(out.max_rel_error, std::abs(numeric - exact) / std::abs(exact));
      if (numeric * initial[q] < 0.0) ++out.sign_changes;
      ++out.samples;
    }
  }
  return out;
}

}  // namespace novikov2c::diagnostics
