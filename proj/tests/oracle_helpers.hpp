#pragma once

// Independent oracles shared by the test suites.  Everything here recomputes
// target quantities by a route the library does not use (quadrature instead
// of series, closed forms instead of iteration), so agreement is evidence and
// not circularity.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

#include <spec2lab/core.hpp>

namespace spec2lab_test {

using spec2lab::Complex;

// |actual - expected| <= tol * max(1, |expected|): relative comparison with
// an absolute floor at 1 so values near zero do not demand exact zeros.
inline bool near(double actual, double expected, double tol) {
  return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

inline bool near(Complex actual, Complex expected, double tol) {
  return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

// Strictly relative comparison, for regression constants whose magnitude is
// itself part of the claim (near() floors the scale at 1, which would turn a
// tiny expected value into an anything-goes absolute test).
inline bool near_rel(double actual, double expected, double rel) {
  return std::abs(actual - expected) <= rel * std::abs(expected);
}

// Fourier coefficient of a function on the unit circle,
//   coeff(n) = (1/2pi) \int_0^{2pi} f(theta) e^{-i n theta} dtheta,
// by the N-point periodic trapezoid rule (a plain average), doubling the
// grid until two refinements agree.  Exact for Laurent polynomials once the
// grid exceeds the bandwidth; geometrically convergent for analytic f.
inline Complex fourier_coeff_oracle(const std::function<Complex(double)>& f, int n,
                                    double rel_tol = 1e-13, int n_start = 4096) {
  const auto on_grid = [&](int grid) {
    Complex acc = 0.0;
    for (int m = 0; m < grid; ++m) {
      const double theta = 2.0 * std::numbers::pi * double(m) / double(grid);
      acc += f(theta) * std::polar(1.0, -double(n) * theta);
    }
    return acc / double(grid);
  };
  Complex prev = on_grid(n_start);
  for (int grid = 2 * n_start; grid <= 16 * n_start; grid *= 2) {
    const Complex next = on_grid(grid);
    if (std::abs(next - prev) <= rel_tol * std::max(1.0, std::abs(next))) return next;
    prev = next;
  }
  throw std::runtime_error("fourier_coeff_oracle: quadrature did not settle");
}

// Deterministic uniform stream for seeded property tests.  The mt19937_64
// bit stream is specified by the standard, and the 53-bit scaling below is a
// pure bit operation, so the same seed yields the same doubles on every
// platform and standard library.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + int(double(hi - lo + 1) * uniform());
  }

 private:
  std::mt19937_64 gen_;
};

// Closed form for the Fourier coefficients of 1/beta(.; z).  With zeta the
// exterior root of w^2 - z w + 1 = 0 and w = zeta^{-2}, summing
//   coeff(n) = zeta^{-n-2} sum_{l >= 0} (l+1)(l+n+1) w^l        (n >= 0)
// term-family by term-family gives
//   coeff(n) = zeta^{-2-|n|} [ (1+w)/(1-w)^3 + |n|/(1-w)^2 ],
// an algebraic expression independent of the library's stopping-rule series.
inline Complex closed_form_inverse_beta_coeff(Complex zeta, int n) {
  const Complex w = 1.0 / (zeta * zeta);
  const Complex one(1.0, 0.0);
  const int a = n < 0 ? -n : n;
  const Complex body =
      (one + w) / ((one - w) * (one - w) * (one - w)) + double(a) / ((one - w) * (one - w));
  return std::pow(zeta, -double(a + 2)) * body;
}

}  // namespace spec2lab_test
