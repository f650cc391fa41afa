#pragma once

// Discrete nonhomogeneous Littlewood-Paley decomposition on a periodic grid.
//
// chi is a smooth radial cutoff equal to 1 on |xi| <= 3/4 and vanishing for
// |xi| >= 4/3; phi(xi) = chi(xi/2) - chi(xi) lives on the annulus
// 3/4 <= |xi| <= 8/3. Block j >= 0 is the multiplier phi(2^-j xi), block -1 is
// chi. The family is renormalised per wavenumber so that it sums to one.

#include <limits>
#include <vector>

#include "novikov2c/spectral.hpp"

namespace novikov2c::lp {

using spectral::Grid;
using spectral::HalfSpectrum;
using spectral::RealField;

/// Smooth step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
double smooth_step(double t);
/// Low-frequency cutoff chi(|xi|).
double chi(double xi);
/// Annulus profile phi(|xi|) = chi(xi/2) - chi(xi).
double phi(double xi);

struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;

  static constexpr double infinity = std::numeric_limits<double>::infinity();
};

struct BonyParts {
  RealField paraproduct_uv;  ///< T_u v
  RealField paraproduct_vu;  ///< T_v u
  RealField remainder;       ///< R(u, v)
};

class DyadicFamily {
 public:
  /// build_dyadic_family: throws ConfigError when the grid cannot host block 0.
  explicit DyadicFamily(const Grid& grid);

  const Grid& grid() const { return grid_; }
  static constexpr int j_min() { return -1; }
  int j_max() const { return j_max_; }
  int block_count() const { return j_max_ + 2; }

  /// Multiplier of block j on half-spectrum indices; empty span semantics
  /// (all zeros) for j outside [-1, j_max].
  double weight(int j, int k) const;
  const std::vector<double>& profile(int j) const;

  RealField block(int j, const RealField& f) const;
  /// S_j f = sum_{j' <= j-1} Delta_{j'} f.
  RealField low_cutoff(int j, const RealField& f) const;
  /// All blocks Delta_{-1} ... Delta_{j_max}, index j+1.
  std::vector<RealField> blocks(const RealField& f) const;
  /// Block L^p norms, index j+1.
  std::vector<double> block_norms(const RealField& f, double p) const;

  double besov_norm(const RealField& f, const BesovIndex& idx) const;

  BonyParts bony_decompose(const RealField& u, const RealField& v) const;

  /// ||f||_{B^{1/2}_{2,1}} / (||f||_{B^{1/2}_{2,inf}} ln(e + ||f||_{B^{3/2}_{2,1}} /
  /// ||f||_{B^{1/2}_{2,inf}})). Throws DomainError for the zero field.
  double log_interpolation_gap(const RealField& f) const;

  /// ||v d_x(Delta_j f) - Delta_j(v d_x f)||_{L^2}.
  double commutator_probe(const RealField& v, const RealField& f, int j) const;

 private:
  void check_grid(const RealField& f) const;

  Grid grid_;
  int j_max_;
  std::vector<std::vector<double>> profiles_;  // index j+1, per half-spectrum index
  std::vector<double> zeros_;
};

inline DyadicFamily build_dyadic_family(const Grid& grid) { return DyadicFamily(grid); }

/// Combines block norms into the l^r-over-j Besov norm with weights 2^{js}.
double besov_from_block_norms(const std::vector<double>& norms, double s, double r);

/// H^s norm computed directly from Fourier coefficients,
/// (int (1 + xi^2)^s |f^(xi)|^2 dxi / 2pi)^{1/2} in its discrete form.
double sobolev_norm(const RealField& f, double s);

}  // namespace novikov2c::lp
