#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spec2lab/linalg.hpp"
#include "spec2lab/operator_core.hpp"
#include "spec2lab/potential.hpp"

namespace spec2lab {

// Monic quadratic matrix pencil Q(z) = a0 + z a1 + z^2 I.  For a Schrodinger
// truncation, a0 = P_k H^2 P_k and a1 = -2 H_k, so that Q(z) = P_k (H-z)^2 P_k
// entrywise for every z.
struct QuadraticPencil {
  int dim = 0;
  Eigen::MatrixXd a0, a1;
  double a0_norm = 0.0, a1_norm = 0.0;  // spectral norms, cached for residual scaling

  Eigen::MatrixXcd operator()(Complex z) const {
    Eigen::MatrixXcd q = a0.cast<Complex>();
    q += z * a1;
    q.diagonal().array() += z * z;
    return q;
  }

  // ||a0|| + |z| ||a1|| + |z|^2, the natural normalization for sigma_min(Q(z)).
  double residual_scale(Complex z) const {
    return a0_norm + std::abs(z) * a1_norm + std::norm(z);
  }
};

inline QuadraticPencil make_pencil(Eigen::MatrixXd a0, Eigen::MatrixXd a1) {
  QuadraticPencil q;
  q.dim = int(a0.rows());
  q.a0_norm = spectral_norm_symmetric(a0);
  q.a1_norm = spectral_norm_symmetric(a1);
  q.a0 = std::move(a0);
  q.a1 = std::move(a1);
  return q;
}

inline QuadraticPencil build_pencil(const Potential& v, int k) {
  return make_pencil(build_h_squared(v, k), -2.0 * build_h(v, k));
}

// The computed second order spectrum: 2k complex points with multiplicity,
// plus (optionally) the scaled sigma_min residual of the pencil at each point.
struct SpectralPointSet {
  int pencil_dim = 0;  // k; the point list has length 2k
  std::vector<Complex> points;
  std::vector<double> residuals;  // parallel to points; empty when skipped
};

enum class ResidualPolicy { compute, skip };

// sigma_min(Q(z)) / (||a0|| + |z| ||a1|| + |z|^2), by exact SVD.  Near-zero
// values identify membership in the second order spectrum.
inline double residual(const QuadraticPencil& q, Complex z) {
  return smallest_singular_value(q(z)) / q.residual_scale(z);
}

// First companion form of the monic pencil: eigenvalues of
// [[0, I], [-a0, -a1]] are exactly the 2k roots of det Q.
inline Eigen::MatrixXd block_companion(const QuadraticPencil& q) {
  const int k = q.dim;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * k, 2 * k);
  c.topRightCorner(k, k) = Eigen::MatrixXd::Identity(k, k);
  c.bottomLeftCorner(k, k) = -q.a0;
  c.bottomRightCorner(k, k) = -q.a1;
  return c;
}

// All 2k roots of det Q(z) with multiplicity, via the balanced block
// companion matrix; residuals filled per point by the LU sigma_min estimator.
inline SpectralPointSet pencil_spectrum(const QuadraticPencil& q,
                                        ResidualPolicy policy = ResidualPolicy::compute) {
  SpectralPointSet set;
  set.pencil_dim = q.dim;
  set.points = matrix_eigenvalues(block_companion(q), "block companion matrix");
  if (policy == ResidualPolicy::compute) {
    set.residuals.reserve(set.points.size());
    for (const Complex& z : set.points)
      set.residuals.push_back(smallest_singular_value_estimate(q(z)) / q.residual_scale(z));
  }
  return set;
}

inline SpectralPointSet second_order_spectrum(const Potential& v, int k,
                                              ResidualPolicy policy = ResidualPolicy::compute) {
  return pencil_spectrum(build_pencil(v, k), policy);
}

// --- determinant-interpolation oracle (small k) ---------------------------
//
// Independent route to the same roots: evaluate det Q(z) at 2k+1 nodes on a
// circle whose radius exceeds every root, recover the monic coefficients by
// inverse DFT, and take the roots of the scalar polynomial.  The determinant
// evaluations go through LU, not through any eigenvalue machinery, so this
// cross-checks the linearization path end to end.

inline Eigen::VectorXcd det_interpolation_coefficients(const QuadraticPencil& q) {
  if (q.dim > 8) throw std::domain_error("det_interpolation_coefficients: oracle limited to k <= 8");
  using LongComplex = std::complex<long double>;
  using MatrixXlcd = Eigen::Matrix<LongComplex, Eigen::Dynamic, Eigen::Dynamic>;
  const int deg = 2 * q.dim;
  const int n_nodes = deg + 1;
  // All roots of det Q lie within max diag |v| + 2 + |z|-safety; radius
  // 3 + max |diagonal of H| keeps the Vandermonde system well conditioned.
  const double radius = 3.0 + (q.a1.diagonal() / -2.0).cwiseAbs().maxCoeff();
  // The determinants reach radius^(2k); in double their roundoff alone would
  // put an ~1e-8 noise floor under the low-order coefficients, so the node
  // evaluations and the DFT run in extended precision and only the finished
  // coefficients are rounded back.
  const MatrixXlcd a0 = q.a0.cast<LongComplex>();
  const MatrixXlcd a1 = q.a1.cast<LongComplex>();
  const MatrixXlcd eye = MatrixXlcd::Identity(q.dim, q.dim);
  std::vector<LongComplex> values(n_nodes);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double r = radius;
  for (int i = 0; i < n_nodes; ++i) {
    const long double theta = two_pi * i / n_nodes;
    const LongComplex node(r * std::cos(theta), r * std::sin(theta));
    const MatrixXlcd qz = a0 + node * a1 + (node * node) * eye;
    values[i] = Eigen::PartialPivLU<MatrixXlcd>(qz).determinant();
  }
  // p(R w^i) = sum_m (c_m R^m) w^{im}  =>  c_m R^m is the inverse DFT of the
  // node values.
  Eigen::VectorXcd coeffs(n_nodes);
  for (int m = 0; m < n_nodes; ++m) {
    LongComplex acc = 0.0L;
    for (int i = 0; i < n_nodes; ++i) {
      const long double phi = -two_pi * (long double)(i) * m / n_nodes;
      acc += values[i] * LongComplex(std::cos(phi), std::sin(phi));
    }
    acc /= (long double)(n_nodes)*std::pow(r, (long double)(m));
    coeffs(m) = Complex(double(acc.real()), double(acc.imag()));
  }
  if (std::abs(coeffs(deg) - 1.0) > 1e-6)
    throw std::runtime_error("det interpolation failed: leading coefficient " +
                             std::to_string(std::abs(coeffs(deg))) + " is not 1 (degenerate nodes)");
  return coeffs;
}

inline std::vector<Complex> det_interpolation_oracle(const QuadraticPencil& q) {
  return polynomial_roots(det_interpolation_coefficients(q));
}

}  // namespace spec2lab
