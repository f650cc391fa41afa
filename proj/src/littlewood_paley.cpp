#include "novikov2c/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "novikov2c/errors.hpp"

namespace novikov2c::lp {

using spectral::Complex;

namespace {

constexpr double kInner = 3.0 / 4.0;
constexpr double kOuter = 4.0 / 3.0;

double exp_bump(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

}  // namespace

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = exp_bump(t);
  const double b = exp_bump(1.0 - t);
  return a / (a + b);
}

double chi(double xi) {
  const double r = std::abs(xi);
  return smooth_step((kOuter - r) / (kOuter - kInner));
}

double phi(double xi) { return chi(0.5 * xi) - chi(xi); }

DyadicFamily::DyadicFamily(const Grid& grid) : grid_(grid) {
  const double nyq = grid.nyquist();
  if (nyq < kInner) {
    throw ConfigError("grid resolves |xi| <= " + std::to_string(nyq) +
                      ", below the inner radius 3/4 of the j = 0 annulus");
  }
  // Largest j whose annulus 2^j [3/4, 8/3] meets the resolved band.
  j_max_ = static_cast<int>(std::floor(std::log2(nyq / kInner)));

  const int half = grid.half_size();
  profiles_.assign(block_count(), std::vector<double>(half, 0.0));
  zeros_.assign(half, 0.0);
  for (int k = 0; k < half; ++k) {
    const double xi = grid.half_wavenumber(k);
    double total = 0.0;
    profiles_[0][k] = chi(xi);
    total += profiles_[0][k];
    for (int j = 0; j <= j_max_; ++j) {
      const double w = phi(std::ldexp(xi, -j));
      profiles_[j + 1][k] = w;
      total += w;
    }
    // Telescoping makes total = chi(2^{-j_max-1} xi) = 1 on the band up to
    // rounding; dividing pins the partition exactly.
    for (int j = 0; j < block_count(); ++j) profiles_[j][k] /= total;
  }
}

double DyadicFamily::weight(int j, int k) const {
  if (j < j_min() || j > j_max_) return 0.0;
  return profiles_[j + 1][k];
}

const std::vector<double>& DyadicFamily::profile(int j) const {
  if (j < j_min() || j > j_max_) return zeros_;
  return profiles_[j + 1];
}

void DyadicFamily::check_grid(const RealField& f) const {
  if (!(f.grid() == grid_)) throw UsageError("field grid does not match the dyadic family");
}

RealField DyadicFamily::block(int j, const RealField& f) const {
  check_grid(f);
  if (j < j_min() || j > j_max_) return RealField(grid_);
  const auto& w = profiles_[j + 1];
  return spectral::apply_multiplier(f, [&](int k) -> Complex { return w[k]; });
}

RealField DyadicFamily::low_cutoff(int j, const RealField& f) const {
  check_grid(f);
  if (j <= j_min()) return RealField(grid_);
  const int last = std::min(j - 1, j_max_);
  std::vector<double> w(grid_.half_size(), 0.0);
  for (int jj = j_min(); jj <= last; ++jj) {
    for (int k = 0; k < grid_.half_size(); ++k) w[k] += profiles_[jj + 1][k];
  }
  return spectral::apply_multiplier(f, [&](int k) -> Complex { return w[k]; });
}

std::vector<RealField> DyadicFamily::blocks(const RealField& f) const {
  check_grid(f);
  const HalfSpectrum s = spectral::half_spectrum(f);
  std::vector<RealField> out;
  out.reserve(block_count());
  for (int j = j_min(); j <= j_max_; ++j) {
    HalfSpectrum b = s;
    const auto& w = profiles_[j + 1];
    for (int k = 0; k < static_cast<int>(b.size()); ++k) b[k] *= w[k];
    out.push_back(spectral::from_half_spectrum(grid_, std::move(b)));
  }
  return out;
}

std::vector<double> DyadicFamily::block_norms(const RealField& f, double p) const {
  const auto bs = blocks(f);
  std::vector<double> norms;
  norms.reserve(bs.size());
  for (const auto& b : bs) norms.push_back(spectral::lp_norm(b, p));
  return norms;
}

double besov_from_block_norms(const std::vector<double>& norms, double s, double r) {
  if (!(r >= 1.0)) throw UsageError("Besov summability index r must be >= 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    const int j = static_cast<int>(i) - 1;
    const double term = std::exp2(j * s) * norms[i];
    if (std::isinf(r)) {
      acc = std::max(acc, term);
    } else if (r == 1.0) {
      acc += term;
    } else {
      acc += std::pow(term, r);
    }
  }
  if (std::isinf(r) || r == 1.0) return acc;
  return std::pow(acc, 1.0 / r);
}

double DyadicFamily::besov_norm(const RealField& f, const BesovIndex& idx) const {
  if (!(idx.p >= 1.0)) throw UsageError("Besov integrability index p must be >= 1");
  return besov_from_block_norms(block_norms(f, idx.p), idx.s, idx.r);
}

BonyParts DyadicFamily::bony_decompose(const RealField& u, const RealField& v) const {
  check_grid(u);
  check_grid(v);
  const auto bu = blocks(u);
  const auto bv = blocks(v);
  const int n = grid_.size();
  const int count = block_count();

  BonyParts parts{RealField(grid_), RealField(grid_), RealField(grid_)};
  // Running low-pass sums: low_u = S_{j-1} u = sum_{k <= j-2} Delta_k u.
  RealField low_u(grid_);
  RealField low_v(grid_);
  for (int idx = 0; idx < count; ++idx) {
    const int j = idx - 1;
    if (j - 2 >= j_min()) {
      low_u += bu[idx - 2];
      low_v += bv[idx - 2];
    }
    for (int i = 0; i < n; ++i) {
      parts.paraproduct_uv[i] += low_u[i] * bv[idx][i];
      parts.paraproduct_vu[i] += low_v[i] * bu[idx][i];
    }
    for (int di = -1; di <= 1; ++di) {
      const int kdx = idx + di;
      if (kdx < 0 || kdx >= count) continue;
      for (int i = 0; i < n; ++i) parts.remainder[i] += bu[kdx][i] * bv[idx][i];
    }
  }
  return parts;
}

double DyadicFamily::log_interpolation_gap(const RealField& f) const {
  const auto norms = block_norms(f, 2.0);
  const double b_half_1 = besov_from_block_norms(norms, 0.5, 1.0);
  const double b_half_inf = besov_from_block_norms(norms, 0.5, BesovIndex::infinity);
  const double b_three_halves_1 = besov_from_block_norms(norms, 1.5, 1.0);
  if (!(b_half_inf > 0.0)) {
    throw DomainError("logarithmic interpolation ratio is undefined for the zero field");
  }
  return b_half_1 / (b_half_inf * std::log(std::numbers::e + b_three_halves_1 / b_half_inf));
}

double DyadicFamily::commutator_probe(const RealField& v, const RealField& f, int j) const {
  check_grid(v);
  check_grid(f);
  const RealField a = v * spectral::derivative(block(j, f), 1);
  const RealField b = block(j, v * spectral::derivative(f, 1));
  return spectral::l2_norm(a - b);
}

double sobolev_norm(const RealField& f, double s) {
  const Grid& g = f.grid();
  const HalfSpectrum spec = spectral::half_spectrum(f);
  const int n = g.size();
  double acc = 0.0;
  for (int k = 0; k < static_cast<int>(spec.size()); ++k) {
    const double w = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    const double xi = g.half_wavenumber(k);
    acc += w * std::pow(1.0 + xi * xi, s) * std::norm(spec[k]);
  }
  return std::sqrt(acc * g.length() / (static_cast<double>(n) * n));
}

}  // namespace novikov2c::lp
