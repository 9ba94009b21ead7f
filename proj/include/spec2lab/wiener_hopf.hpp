#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spec2lab/laurent.hpp"

namespace spec2lab {

// T(beta(.; z)) is invertible iff 0 is not in the symbol's range
// (2 cos theta - z)^2, i.e. iff z is not in [-2, 2].  Decided analytically.
inline bool toeplitz_invertible(Complex z) {
  return z.imag() != 0.0 || std::abs(z.real()) > 2.0;
}

// Distance from z to the interval [-2, 2].
inline double interval_distance(Complex z) {
  const double x = z.real(), y = z.imag();
  if (x < -2.0) return std::hypot(x + 2.0, y);
  if (x > 2.0) return std::hypot(x - 2.0, y);
  return std::abs(y);
}

// Factorization degenerates when the symbol's zero zeta collides with the
// unit circle; z this close to [-2, 2] is treated as on-interval.
inline constexpr double interval_cutoff = 1e-14;

// Root of w^2 - z w + 1 = 0 with |w| > 1.  The two roots multiply to 1, so
// the larger-modulus branch of the quadratic formula is the exterior one.
inline Complex outer_quadratic_root(Complex z) {
  const Complex s = std::sqrt(z * z - 4.0);
  const Complex w1 = 0.5 * (z + s), w2 = 0.5 * (z - s);
  return std::abs(w1) >= std::abs(w2) ? w1 : w2;
}

// Wiener-Hopf factorization beta = beta_plus * beta_minus with
//   beta_plus(t)  = (1/zeta) (t - zeta)^2      (no zeros in the closed disk)
//   beta_minus(t) = (1/zeta) (t^{-1} - zeta)^2 (no zeros outside)
// where zeta is the exterior root above; zeta + 1/zeta = z.
struct WienerHopfData {
  Complex z;
  Complex zeta;
  LaurentSymbol plus, minus;
};

inline WienerHopfData wiener_hopf(Complex z) {
  if (interval_distance(z) < interval_cutoff)
    throw std::domain_error("wiener_hopf: symbol has a zero on the circle (z within 1e-14 of [-2,2])");
  const Complex zeta = outer_quadratic_root(z);
  WienerHopfData data;
  data.z = z;
  data.zeta = zeta;
  data.plus = LaurentSymbol(0, {zeta, -2.0, 1.0 / zeta});    // zeta - 2t + t^2/zeta
  data.minus = LaurentSymbol(-2, {1.0 / zeta, -2.0, zeta});  // zeta - 2/t + 1/(zeta t^2)
  return data;
}

// Fourier coefficients of 1/beta_plus: the geometric-derivative series
//   1/beta_plus(t) = zeta / (t - zeta)^2 = sum_{m >= 0} (m+1) zeta^{-m-1} t^m,
// absolutely convergent on the circle since |zeta| > 1.
inline Complex plus_inverse_coeff(Complex zeta, int m) {
  if (m < 0) return 0.0;
  return double(m + 1) * std::pow(zeta, -(m + 1));
}

// Symmetric coefficient table of 1/beta together with a certified bound on
// the mass beyond the stored window.
struct InverseSymbolCoeffs {
  Complex z;
  Complex zeta;
  int n_max = 0;
  std::vector<Complex> c;  // c[n] for n = 0..n_max; coeff(-n) = coeff(n)
  double tail_bound = 0.0; // bound on sum_{|n| > n_max} |coeff(n)|

  Complex coeff(int n) const {
    const int a = n < 0 ? -n : n;
    if (a > n_max)
      throw std::out_of_range("InverseSymbolCoeffs: index " + std::to_string(n) +
                              " beyond stored window " + std::to_string(n_max));
    return c[a];
  }
};

// Fourier coefficients of beta^{-1} = (1/beta_plus)(1/beta_minus).  Since
// 1/beta_minus(t) = 1/beta_plus(1/t), the convolution gives, for n >= 0,
//   coeff(n) = sum_{l >= 0} p(l + n) p(l),   p(m) = (m+1) zeta^{-m-1}
//            = zeta^{-n-2} sum_{l >= 0} (l+1)(l+n+1) w^l,   w = zeta^{-2},
// summed until the geometric majorant certifies the requested accuracy.
// coeff(-n) = coeff(n) because beta(t) = beta(1/t).
inline InverseSymbolCoeffs inverse_symbol_coeffs(Complex z, int n_max) {
  if (n_max < 0) throw std::domain_error("inverse_symbol_coeffs: n_max must be >= 0");
  if (interval_distance(z) < interval_cutoff)
    throw std::domain_error("inverse_symbol_coeffs: symbol has a zero on the circle");
  const Complex zeta = outer_quadratic_root(z);
  const Complex w = 1.0 / (zeta * zeta);
  const double aw = std::abs(w);

  InverseSymbolCoeffs out;
  out.z = z;
  out.zeta = zeta;
  out.n_max = n_max;
  out.c.resize(n_max + 1);

  for (int n = 0; n <= n_max; ++n) {
    Complex acc = 0.0;
    Complex wl = 1.0;  // w^l
    for (long l = 0; l < 1000000; ++l) {
      const Complex term = double(l + 1) * double(l + n + 1) * wl;
      acc += term;
      wl *= w;
      // Remaining terms are bounded by |term_next| * sum of a polynomially
      // weighted geometric series; 10/(1-|w|)^2 over-covers the weight growth.
      const double next_mag = double(l + 2) * double(l + n + 2) * std::abs(wl);
      if (next_mag * 10.0 / ((1.0 - aw) * (1.0 - aw)) <= 1e-18 * std::abs(acc) && l >= 2) break;
      if (l == 999999)
        throw std::runtime_error("inverse_symbol_coeffs: series did not converge (z too close to [-2,2])");
    }
    out.c[n] = std::pow(zeta, -(n + 2)) * acc;
  }

  // Tail of the coefficient family: |coeff(n)| <= rho^{n+2} (A + B n) with
  // rho = 1/|zeta|, A = (1+rho^2)/(1-rho^2)^3, B = 1/(1-rho^2)^2 (triangle
  // inequality on the series above).  Sum the majorant beyond n_max in closed
  // form; factor 2 covers the negative indices.
  const double rho = 1.0 / std::abs(zeta);
  const double r2 = rho * rho;
  const double A = (1.0 + r2) / std::pow(1.0 - r2, 3);
  const double B = 1.0 / ((1.0 - r2) * (1.0 - r2));
  const double N = double(n_max);
  const double geo = std::pow(rho, N + 3.0) / (1.0 - rho);                       // sum_{n>N} rho^{n+2}
  const double lin = std::pow(rho, N + 3.0) * ((N + 1.0) - N * rho) /            // sum_{n>N} n rho^{n+2}
                     ((1.0 - rho) * (1.0 - rho));
  out.tail_bound = 2.0 * (A * geo + B * lin);
  return out;
}

// Certified pointwise majorant used for the tail above; exposed for tests.
inline double inverse_coeff_majorant(Complex z, int n) {
  const double rho = 1.0 / std::abs(outer_quadratic_root(z));
  const double r2 = rho * rho;
  const double A = (1.0 + r2) / std::pow(1.0 - r2, 3);
  const double B = 1.0 / ((1.0 - r2) * (1.0 - r2));
  const int a = n < 0 ? -n : n;
  return std::pow(rho, a + 2) * (A + B * double(a));
}

}  // namespace spec2lab
