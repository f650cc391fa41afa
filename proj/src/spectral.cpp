#include "novikov2c/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "novikov2c/errors.hpp"

namespace novikov2c::spectral {

namespace {

// FFTW's planner is not reentrant; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const Complex* p) {
  return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p));
}

}  // namespace

struct Grid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan c2c_forward = nullptr;
  fftw_plan c2c_backward = nullptr;

  explicit Plans(int n) {
    std::lock_guard lock(planner_mutex());
    double* real = fftw_alloc_real(n);
    fftw_complex* half = fftw_alloc_complex(n / 2 + 1);
    fftw_complex* a = fftw_alloc_complex(n);
    fftw_complex* b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    r2c = fftw_plan_dft_r2c_1d(n, real, half, flags);
    c2r = fftw_plan_dft_c2r_1d(n, half, real, flags | FFTW_DESTROY_INPUT);
    c2c_forward = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, flags);
    c2c_backward = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, flags);
    fftw_free(b);
    fftw_free(a);
    fftw_free(half);
    fftw_free(real);
  }
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(c2c_backward);
    fftw_destroy_plan(c2c_forward);
    fftw_destroy_plan(c2r);
    fftw_destroy_plan(r2c);
  }
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Grid::Grid(double length, int node_count) : length_(length), n_(node_count) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ConfigError("grid length must be positive and finite, got " + std::to_string(length));
  }
  if (node_count < 16 || !is_power_of_two(node_count)) {
    throw ConfigError("grid node count must be a power of two >= 16, got " +
                      std::to_string(node_count));
  }
  plans_ = std::make_shared<const Plans>(n_);
}

Grid make_grid(double length, int node_count) { return Grid(length, node_count); }

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_);
  for (int i = 0; i < n_; ++i) x[i] = node(i);
  return x;
}

double Grid::wavenumber(int index) const {
  return 2.0 * std::numbers::pi * mode(index) / length_;
}

double Grid::half_wavenumber(int k) const { return 2.0 * std::numbers::pi * k / length_; }

double Grid::nyquist() const { return std::numbers::pi * n_ / length_; }

void Grid::forward_half(std::span<const double> in, std::span<Complex> out) const {
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in.data()), as_fftw(out.data()));
}

void Grid::inverse_half(std::span<const Complex> in, std::span<double> out) const {
  // c2r overwrites its input.
  std::vector<Complex> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, as_fftw(scratch.data()), out.data());
}

void Grid::forward_full(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(plans_->c2c_forward, as_fftw(in.data()), as_fftw(out.data()));
}

void Grid::inverse_full(std::span<const Complex> in, std::span<Complex> out) const {
  fftw_execute_dft(plans_->c2c_backward, as_fftw(in.data()), as_fftw(out.data()));
}

// ---------------------------------------------------------------------------

RealField::RealField(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}

RealField::RealField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_.size()) {
    throw UsageError("field has " + std::to_string(values_.size()) + " values, grid has " +
                     std::to_string(grid_.size()) + " nodes");
  }
}

bool RealField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void RealField::check_same_grid(const RealField& o) const {
  if (!(grid_ == o.grid_)) throw UsageError("fields live on different grids");
}

RealField& RealField::operator+=(const RealField& o) {
  check_same_grid(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  check_same_grid(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

RealField& RealField::operator*=(const RealField& o) {
  check_same_grid(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

SpectralCoeffs::SpectralCoeffs(Grid grid, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != grid_.size()) {
    throw UsageError("coefficient count does not match grid");
  }
}

Complex SpectralCoeffs::at_mode(int k) const {
  const int n = grid_.size();
  if (k < -n / 2 || k >= n / 2) throw UsageError("mode out of range");
  return coeffs_[k < 0 ? k + n : k];
}

// ---------------------------------------------------------------------------

HalfSpectrum half_spectrum(const RealField& f) {
  HalfSpectrum s(f.grid().half_size());
  f.grid().forward_half(f.values(), s);
  return s;
}

RealField from_half_spectrum(const Grid& grid, HalfSpectrum spectrum) {
  std::vector<double> v(grid.size());
  grid.inverse_half(spectrum, v);
  const double scale = 1.0 / grid.size();
  for (double& x : v) x *= scale;
  return RealField(grid, std::move(v));
}

SpectralCoeffs forward_transform(const RealField& f) {
  const Grid& g = f.grid();
  const int n = g.size();
  HalfSpectrum half = half_spectrum(f);
  std::vector<Complex> full(n);
  for (int k = 0; k <= n / 2; ++k) full[k] = half[k];
  for (int k = 1; k < n / 2; ++k) full[n - k] = std::conj(half[k]);
  return SpectralCoeffs(g, std::move(full));
}

RealField inverse_transform(const SpectralCoeffs& F, double* max_imaginary) {
  const Grid& g = F.grid();
  const int n = g.size();
  std::vector<Complex> out(n);
  g.inverse_full(F.coeffs(), out);
  std::vector<double> v(n);
  double imag = 0.0;
  for (int i = 0; i < n; ++i) {
    v[i] = out[i].real() / n;
    imag = std::max(imag, std::abs(out[i].imag()) / n);
  }
  if (max_imaginary) *max_imaginary = imag;
  return RealField(g, std::move(v));
}

RealField derivative(const RealField& f, int order) {
  if (order < 0) throw UsageError("derivative order must be nonnegative");
  if (order == 0) return f;
  const Grid& g = f.grid();
  const int nyq = g.size() / 2;
  return apply_multiplier(f, [&](int k) -> Complex {
    if (k == nyq && order % 2 == 1) return 0.0;
    const double xi = g.half_wavenumber(k);
    // (i xi)^order
    Complex m = 1.0;
    for (int p = 0; p < order; ++p) m *= Complex(0.0, xi);
    return m;
  });
}

RealField helmholtz_inverse(const RealField& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int k) -> Complex {
    const double xi = g.half_wavenumber(k);
    return 1.0 / (1.0 + xi * xi);
  });
}

RealField green_deriv_convolve(const RealField& f) {
  const Grid& g = f.grid();
  const int nyq = g.size() / 2;
  return apply_multiplier(f, [&](int k) -> Complex {
    if (k == nyq) return 0.0;
    const double xi = g.half_wavenumber(k);
    return Complex(0.0, xi / (1.0 + xi * xi));
  });
}

RealField helmholtz(const RealField& f) {
  const Grid& g = f.grid();
  return apply_multiplier(f, [&](int k) -> Complex {
    const double xi = g.half_wavenumber(k);
    return 1.0 + xi * xi;
  });
}

SpectralCoeffs dealias(const SpectralCoeffs& F) {
  SpectralCoeffs out = F;
  const Grid& g = F.grid();
  const int cutoff = g.dealias_cutoff();
  for (int i = 0; i < g.size(); ++i) {
    if (std::abs(g.mode(i)) > cutoff) out[i] = 0.0;
  }
  return out;
}

RealField dealias(const RealField& f) {
  const int cutoff = f.grid().dealias_cutoff();
  return apply_multiplier(f, [&](int k) -> Complex { return k > cutoff ? 0.0 : 1.0; });
}

RealField dealiased_product(const RealField& a, const RealField& b) { return dealias(a * b); }

double integrate(const RealField& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().spacing();
}

double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw UsageError("L^p norm needs p >= 1");
  if (std::isinf(p)) return sup_norm(f);
  double s = 0.0;
  if (p == 2.0) {
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.grid().spacing());
  }
  if (p == 1.0) {
    for (double v : f.values()) s += std::abs(v);
    return s * f.grid().spacing();
  }
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().spacing(), 1.0 / p);
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double l2_norm(const RealField& f) { return lp_norm(f, 2.0); }

double spectral_tail_ratio(const RealField& f) {
  const HalfSpectrum s = half_spectrum(f);
  const int n = f.grid().size();
  const int top = f.grid().dealias_cutoff();
  const int bottom = n / 6;
  double total = 0.0;
  double tail = 0.0;
  for (int k = 0; k < static_cast<int>(s.size()); ++k) {
    // Interior modes stand for the +k and -k pair.
    const double w = (k == 0 || k == n / 2) ? 1.0 : 2.0;
    const double e = w * std::norm(s[k]);
    total += e;
    if (k > bottom && k <= top) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

// ---------------------------------------------------------------------------

void fourier_basis(const Grid& grid, double x, std::span<Complex> out) {
  const double theta = 2.0 * std::numbers::pi * x / grid.length();
  const Complex w = std::polar(1.0, theta);
  constexpr int kResync = 32;
  Complex z = 1.0;
  for (int k = 0; k < static_cast<int>(out.size()); ++k) {
    if (k % kResync == 0) z = std::polar(1.0, theta * k);
    out[k] = z;
    z *= w;
  }
}

TrigInterpolant::TrigInterpolant(const RealField& f)
    : grid_(f.grid()), spectrum_(half_spectrum(f)) {}

TrigInterpolant::TrigInterpolant(const Grid& grid, HalfSpectrum spectrum)
    : grid_(grid), spectrum_(std::move(spectrum)) {}

double TrigInterpolant::operator()(double x) const { return value_and_slope(x).first; }

std::pair<double, double> TrigInterpolant::value_and_slope(double x) const {
  const int n = grid_.size();
  const int nyq = n / 2;
  std::vector<Complex> basis(spectrum_.size());
  fourier_basis(grid_, x, basis);
  double value = spectrum_[0].real();
  double slope = 0.0;
  for (int k = 1; k < nyq; ++k) {
    const Complex term = spectrum_[k] * basis[k];
    value += 2.0 * term.real();
    // d/dx Re(F e^{i xi x}) = -xi Im(F e^{i xi x})
    slope -= 2.0 * grid_.half_wavenumber(k) * term.imag();
  }
  value += spectrum_[nyq].real() * basis[nyq].real();
  return {value / n, slope / n};
}

}  // namespace novikov2c::spectral
