#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spec2lab/core.hpp"

namespace spec2lab {

// Finitely supported Laurent symbol alpha(t) = sum_n coeff(n) t^n, evaluated
// on (a neighborhood of) the unit circle.  Coefficients are stored densely on
// a contiguous index window [lo, lo + size).
class LaurentSymbol {
 public:
  LaurentSymbol() = default;
  LaurentSymbol(int lo, std::vector<Complex> coeffs) : lo_(lo), c_(std::move(coeffs)) {}

  static LaurentSymbol identity() { return LaurentSymbol(0, {1.0}); }

  int min_index() const { return lo_; }
  int max_index() const { return lo_ + int(c_.size()) - 1; }

  Complex coeff(int n) const {
    const int i = n - lo_;
    return (i >= 0 && i < int(c_.size())) ? c_[i] : Complex(0.0);
  }

  Complex operator()(Complex t) const {
    // Horner over the window, then shift by t^{lo}: sum c_i t^{lo+i}.
    Complex acc = 0.0;
    for (int i = int(c_.size()) - 1; i >= 0; --i) acc = acc * t + c_[i];
    return acc * std::pow(t, lo_);
  }

  Complex at_angle(double theta) const { return (*this)(std::polar(1.0, theta)); }

  // alpha~(t) := alpha(1/t); reflects the coefficient index.
  LaurentSymbol reflected() const {
    std::vector<Complex> r(c_.rbegin(), c_.rend());
    return LaurentSymbol(-max_index(), std::move(r));
  }

 private:
  int lo_ = 0;
  std::vector<Complex> c_;
};

// beta(t; z) = (t^{-1} - z + t)^2, the Toeplitz symbol of (H0 - z)^2 for the
// free operator.  Coefficients: {-2: 1, -1: -2z, 0: 2 + z^2, 1: -2z, 2: 1}.
inline LaurentSymbol beta_symbol(Complex z) {
  return LaurentSymbol(-2, {1.0, -2.0 * z, 2.0 + z * z, -2.0 * z, 1.0});
}

// On the circle, beta(e^{i theta}; z) = (2 cos theta - z)^2.
inline Complex beta_at_angle(double theta, Complex z) {
  const Complex w = 2.0 * std::cos(theta) - z;
  return w * w;
}

// sup over the circle of |beta(.; z)| = (max over w in [-2,2] of |w - z|)^2;
// the maximum is attained at an interval endpoint.
inline double beta_sup_norm(Complex z) {
  const double m = std::max(std::abs(z - 2.0), std::abs(z + 2.0));
  return m * m;
}

// Toeplitz / Hankel sections from an arbitrary coefficient source
// (f(n) -> Complex).  Conventions: Toeplitz entry (m, n) = f(m - n); Hankel
// entry (m, n) = f(m + n + 1) with 0-based m, n (i.e. coeff(row + col - 1) in
// 1-based indexing).
template <class CoeffFn>
Eigen::MatrixXcd toeplitz_from(CoeffFn&& f, int k) {
  if (k < 1) throw std::domain_error("toeplitz_from: dimension k must be >= 1");
  Eigen::MatrixXcd m(k, k);
  for (int d = -(k - 1); d <= k - 1; ++d) {
    const Complex c = f(d);
    for (int row = std::max(0, d); row < k && row - d < k; ++row) m(row, row - d) = c;
  }
  return m;
}

template <class CoeffFn>
Eigen::MatrixXcd hankel_from(CoeffFn&& f, int k) {
  if (k < 1) throw std::domain_error("hankel_from: dimension k must be >= 1");
  Eigen::MatrixXcd m(k, k);
  for (int s = 1; s <= 2 * k - 1; ++s) {
    const Complex c = f(s);
    for (int row = std::max(0, s - k); row <= std::min(k - 1, s - 1); ++row) m(row, s - 1 - row) = c;
  }
  return m;
}

inline Eigen::MatrixXcd toeplitz_matrix(const LaurentSymbol& s, int k) {
  return toeplitz_from([&s](int n) { return s.coeff(n); }, k);
}

inline Eigen::MatrixXcd hankel_matrix(const LaurentSymbol& s, int k) {
  return hankel_from([&s](int n) { return s.coeff(n); }, k);
}

// Samples alpha(e^{i theta}) at N uniform angles theta_m = 2 pi m / N.
inline std::vector<Complex> symbol_curve(const LaurentSymbol& s, int n_grid) {
  if (n_grid < 8) throw std::invalid_argument("symbol_curve: grid size must be >= 8");
  std::vector<Complex> out(n_grid);
  for (int m = 0; m < n_grid; ++m) out[m] = s.at_angle(2.0 * std::numbers::pi * m / n_grid);
  return out;
}

}  // namespace spec2lab
