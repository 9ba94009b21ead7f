#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "spec2lab/core.hpp"

namespace spec2lab {

// Parlett-Reinsch balancing: a diagonal similarity D^{-1} M D with powers-of-2
// scale factors, chosen so that the off-diagonal row and column 1-norms of
// each index roughly match.  Eigenvalues are untouched and the scaling is
// exact in floating point.  Dense nonsymmetric QR iterations are much better
// behaved on companion matrices after this step, which mix O(1) and
// O(|coefficients|) scales.
template <class Scalar>
void balance_in_place(Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  const int n = int(m.rows());
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double col = 0.0, row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(m(j, i));
        row += std::abs(m(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < 0.95 * (col + row)) {
        converged = false;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

// Largest |eigenvalue| of a real symmetric matrix == its spectral norm.
inline double spectral_norm_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("spectral_norm_symmetric: symmetric eigensolve failed");
  return std::max(std::abs(es.eigenvalues()(0)), std::abs(es.eigenvalues()(m.rows() - 1)));
}

// Spectral norm (largest singular value) of a general complex matrix via the
// largest eigenvalue of m^H m; relative accuracy is machine-level because the
// top of the spectrum is perfectly conditioned under the square root.
inline double spectral_norm(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("spectral_norm: eigensolve failed");
  return std::sqrt(std::max(0.0, es.eigenvalues()(m.rows() - 1)));
}

// Smallest singular value by full SVD (exact route; cost ~ the SVD).
inline double smallest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return 0.0;
  if (m.rows() <= 128) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(m.rows() - 1);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(m.rows() - 1);
}

// Smallest singular value by inverse power iteration on m^H m using one LU
// factorization (cheap route for batch evaluation; relative accuracy ~1e-10).
// Numerically singular input yields 0.
inline double smallest_singular_value_estimate(const Eigen::MatrixXcd& m) {
  const int n = int(m.rows());
  if (n == 0) return 0.0;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  // Deterministic start vector with no particular structure.
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(std::cos(0.7 * i + 0.3), std::sin(1.3 * i + 0.7));
  v.normalize();
  double rho = 0.0;
  for (int it = 0; it < 200; ++it) {
    // w = (m^H m)^{-1} v  =  m^{-1} (m^{-H} v)
    const Eigen::VectorXcd w = lu.solve(lu.adjoint().solve(v));
    const double rho_next = w.norm();
    if (!std::isfinite(rho_next)) return 0.0;   // exactly/over-singular
    if (rho_next == 0.0) return 0.0;
    v = w / rho_next;
    if (it > 0 && std::abs(rho_next / rho - 1.0) <= 1e-10) {
      rho = rho_next;
      break;
    }
    rho = rho_next;
  }
  return 1.0 / std::sqrt(rho);
}

// Eigenvalues of a dense real matrix: balance, then QR iteration.  Throws on
// non-convergence instead of silently truncating the eigenvalue list.
inline std::vector<Complex> matrix_eigenvalues(Eigen::MatrixXd m, const std::string& what) {
  balance_in_place(m);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue iteration failed to converge for " + what + " (dimension " +
                             std::to_string(m.rows()) + ")");
  std::vector<Complex> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

inline std::vector<Complex> matrix_eigenvalues(Eigen::MatrixXcd m, const std::string& what) {
  balance_in_place(m);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue iteration failed to converge for " + what + " (dimension " +
                             std::to_string(m.rows()) + ")");
  std::vector<Complex> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) out[i] = es.eigenvalues()(i);
  return out;
}

namespace detail {

// Scalar companion matrix (coefficients in the last column, ones on the
// subdiagonal) of the monic polynomial with the given low-to-high
// coefficients c0..c_{d-1}, 1.
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> scalar_companion(
    const std::vector<Scalar>& monic_tail) {
  const int d = int(monic_tail.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) c(i + 1, i) = Scalar(1);
  for (int i = 0; i < d; ++i) c(i, d - 1) = -monic_tail[i];
  return c;
}

}  // namespace detail

// Roots of a polynomial given by low-to-high coefficients (the leading one
// last), via the balanced companion matrix.  The leading coefficient is
// normalized away; a (near-)zero leading coefficient is rejected.
inline std::vector<Complex> polynomial_roots(const Eigen::VectorXcd& coeffs) {
  const int d = int(coeffs.size()) - 1;
  if (d < 0) throw std::invalid_argument("polynomial_roots: empty coefficient list");
  const double scale = coeffs.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw std::invalid_argument("polynomial_roots: zero polynomial");
  if (std::abs(coeffs(d)) < 1e-300 * scale)
    throw std::invalid_argument("polynomial_roots: degenerate leading coefficient");
  if (d == 0) return {};
  std::vector<Complex> tail(d);
  for (int i = 0; i < d; ++i) tail[i] = coeffs(i) / coeffs(d);
  return matrix_eigenvalues(Eigen::MatrixXcd(detail::scalar_companion(tail)), "scalar companion matrix");
}

inline std::vector<Complex> polynomial_roots(const Eigen::VectorXd& coeffs) {
  const int d = int(coeffs.size()) - 1;
  if (d < 0) throw std::invalid_argument("polynomial_roots: empty coefficient list");
  const double scale = coeffs.cwiseAbs().maxCoeff();
  if (scale == 0.0) throw std::invalid_argument("polynomial_roots: zero polynomial");
  if (std::abs(coeffs(d)) < 1e-300 * scale)
    throw std::invalid_argument("polynomial_roots: degenerate leading coefficient");
  if (d == 0) return {};
  std::vector<double> tail(d);
  for (int i = 0; i < d; ++i) tail[i] = coeffs(i) / coeffs(d);
  return matrix_eigenvalues(Eigen::MatrixXd(detail::scalar_companion(tail)), "scalar companion matrix");
}

}  // namespace spec2lab
