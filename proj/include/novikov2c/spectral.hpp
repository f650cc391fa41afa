#pragma once

// Periodic Fourier spectral infrastructure on a uniform grid over [0, L).
//
// Conventions: the forward transform is unnormalized, F_k = sum_j f_j e^{-i xi_k x_j};
// the inverse carries the 1/N. Wavenumbers are angular, xi_k = 2 pi k / L, stored
// in standard DFT order (0, 1, ..., N/2-1, -N/2, ..., -1).

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace novikov2c::spectral {

using Complex = std::complex<double>;

/// Half-length spectrum (indices 0..N/2) of a real field, as produced by an r2c FFT.
using HalfSpectrum = std::vector<Complex>;

class Grid {
 public:
  /// Throws ConfigError unless length > 0 and node_count is a power of two >= 16.
  Grid(double length, int node_count);

  double length() const { return length_; }
  int size() const { return n_; }
  int half_size() const { return n_ / 2 + 1; }
  double spacing() const { return length_ / n_; }
  double node(int i) const { return i * spacing(); }
  std::vector<double> nodes() const;

  /// Signed integer mode number for DFT index `index` in [0, N).
  int mode(int index) const { return index < n_ / 2 ? index : index - n_; }
  /// Angular wavenumber of DFT index `index` in [0, N).
  double wavenumber(int index) const;
  /// Angular wavenumber of half-spectrum index k in [0, N/2].
  double half_wavenumber(int k) const;
  double nyquist() const;
  /// Largest |k| retained by the two-thirds rule.
  int dealias_cutoff() const { return n_ / 3; }

  // FFT kernels. Plans are shared between copies of one Grid and executed
  // with the new-array interface, so concurrent calls are safe.
  void forward_half(std::span<const double> in, std::span<Complex> out) const;
  /// Unnormalized c2r inverse (the caller applies 1/N).
  void inverse_half(std::span<const Complex> in, std::span<double> out) const;
  void forward_full(std::span<const Complex> in, std::span<Complex> out) const;
  void inverse_full(std::span<const Complex> in, std::span<Complex> out) const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.n_ == b.n_ && a.length_ == b.length_;
  }

 private:
  struct Plans;
  double length_;
  int n_;
  std::shared_ptr<const Plans> plans_;
};

Grid make_grid(double length, int node_count);

class RealField {
 public:
  explicit RealField(Grid grid);
  RealField(Grid grid, std::vector<double> values);

  template <class F>
  static RealField from_function(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (int i = 0; i < grid.size(); ++i) v[i] = f(grid.node(i));
    return RealField(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  const std::vector<double>& data() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  double& operator[](int i) { return values_[i]; }

  bool all_finite() const;

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(const RealField& o);
  RealField& operator*=(double s);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, const RealField& b) { return a *= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }
  friend RealField operator-(RealField a) { return a *= -1.0; }

 private:
  void check_same_grid(const RealField& o) const;
  Grid grid_;
  std::vector<double> values_;
};

/// Full-length Fourier coefficients in DFT order.
class SpectralCoeffs {
 public:
  SpectralCoeffs(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  Complex operator[](int index) const { return coeffs_[index]; }
  Complex& operator[](int index) { return coeffs_[index]; }
  /// Coefficient of signed mode k in [-N/2, N/2).
  Complex at_mode(int k) const;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralCoeffs forward_transform(const RealField& f);
/// Real part of the inverse DFT; `max_imaginary`, when given, receives the
/// largest discarded imaginary magnitude.
RealField inverse_transform(const SpectralCoeffs& F, double* max_imaginary = nullptr);

HalfSpectrum half_spectrum(const RealField& f);
RealField from_half_spectrum(const Grid& grid, HalfSpectrum spectrum);

/// Applies the Fourier multiplier `symbol(k)` for half-spectrum index k.
template <class Symbol>
RealField apply_multiplier(const RealField& f, Symbol&& symbol) {
  HalfSpectrum s = half_spectrum(f);
  for (int k = 0; k < static_cast<int>(s.size()); ++k) s[k] *= symbol(k);
  return from_half_spectrum(f.grid(), std::move(s));
}

/// Spectral derivative with multiplier (i xi)^order; Nyquist zeroed for odd orders.
RealField derivative(const RealField& f, int order = 1);
/// (1 - d_xx)^{-1}, i.e. convolution with G = e^{-|x|}/2.
RealField helmholtz_inverse(const RealField& f);
/// d_x G * f, multiplier i xi / (1 + xi^2).
RealField green_deriv_convolve(const RealField& f);
/// (1 - d_xx) f.
RealField helmholtz(const RealField& f);

/// Two-thirds rule: zero every mode with |k| > N/3.
SpectralCoeffs dealias(const SpectralCoeffs& F);
RealField dealias(const RealField& f);
/// Pointwise product followed by one dealiasing pass.
RealField dealiased_product(const RealField& a, const RealField& b);

/// Trapezoid quadrature over one period.
double integrate(const RealField& f);
/// Grid L^p norm; p = infinity gives the maximum over nodes.
double lp_norm(const RealField& f, double p);
double sup_norm(const RealField& f);
double l2_norm(const RealField& f);
/// Energy fraction in the top octave of the dealiased band, N/6 < |k| <= N/3.
/// Zero for the zero field.
double spectral_tail_ratio(const RealField& f);

/// Evaluates the trigonometric interpolant of the field and of its first
/// x-derivative at arbitrary points. Valid for any real x (periodic).
class TrigInterpolant {
 public:
  explicit TrigInterpolant(const RealField& f);
  TrigInterpolant(const Grid& grid, HalfSpectrum spectrum);

  double operator()(double x) const;
  /// Value and first derivative at x.
  std::pair<double, double> value_and_slope(double x) const;

  const Grid& grid() const { return grid_; }
  const HalfSpectrum& spectrum() const { return spectrum_; }

 private:
  Grid grid_;
  HalfSpectrum spectrum_;
};

/// Fills e^{i xi_k x} for k = 0..N/2 with periodic resynchronisation of the
/// rotation recurrence.
void fourier_basis(const Grid& grid, double x, std::span<Complex> out);

}  // namespace novikov2c::spectral
