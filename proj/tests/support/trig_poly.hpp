#pragma once

// Exact trigonometric polynomials on [0, L): coefficient maps with symbolic
// products, derivatives and Helmholtz inversion. Used as an FFT-free oracle.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

namespace testing_support {

class TrigPoly {
 public:
  using C = std::complex<double>;

  explicit TrigPoly(double L) : L_(L) {}

  static TrigPoly constant(double L, double c) {
    TrigPoly p(L);
    p.c_[0] = c;
    return p;
  }
  /// a cos(k 2pi x / L) + b sin(k 2pi x / L)
  static TrigPoly mode(double L, int k, double a, double b) {
    TrigPoly p(L);
    if (k == 0) {
      p.c_[0] = a;
      return p;
    }
    p.c_[k] += C(a / 2, -b / 2);
    p.c_[-k] += C(a / 2, b / 2);
    return p;
  }

  double length() const { return L_; }
  int degree() const {
    int d = 0;
    for (const auto& [k, v] : c_) d = std::max(d, std::abs(k));
    return d;
  }

  double operator()(double x) const {
    C s = 0;
    for (const auto& [k, v] : c_) s += v * std::exp(C(0, xi(k) * x));
    return s.real();
  }
  std::vector<double> sample(int n) const {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = (*this)(i * L_ / n);
    return out;
  }

  TrigPoly operator+(const TrigPoly& o) const {
    TrigPoly r = *this;
    for (const auto& [k, v] : o.c_) r.c_[k] += v;
    return r;
  }
  TrigPoly operator-(const TrigPoly& o) const { return *this + o * -1.0; }
  TrigPoly operator*(double s) const {
    TrigPoly r = *this;
    for (auto& [k, v] : r.c_) v *= s;
    return r;
  }
  TrigPoly operator*(const TrigPoly& o) const {
    TrigPoly r(L_);
    for (const auto& [k1, v1] : c_)
      for (const auto& [k2, v2] : o.c_) r.c_[k1 + k2] += v1 * v2;
    return r;
  }
  TrigPoly dx() const {
    TrigPoly r(L_);
    for (const auto& [k, v] : c_) r.c_[k] = v * C(0, xi(k));
    return r;
  }
  /// (1 - d_xx)^{-1}
  TrigPoly helmholtz_inverse() const {
    TrigPoly r(L_);
    for (const auto& [k, v] : c_) r.c_[k] = v / (1.0 + xi(k) * xi(k));
    return r;
  }

 private:
  double xi(int k) const { return 2.0 * std::numbers::pi * k / L_; }
  double L_;
  std::map<int, C> c_;
};

}  // namespace testing_support
