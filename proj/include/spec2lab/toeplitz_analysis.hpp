#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "spec2lab/laurent.hpp"
#include "spec2lab/operator_core.hpp"
#include "spec2lab/pencil.hpp"
#include "spec2lab/wiener_hopf.hpp"

namespace spec2lab {

namespace detail {
inline void check_valid_symbol_point(Complex z, const char* who) {
  if (!toeplitz_invertible(z) || interval_distance(z) < interval_cutoff)
    throw std::domain_error(std::string(who) + ": z is on (or within 1e-14 of) [-2,2], symbol not invertible");
}
}  // namespace detail

// T_k(beta(.; z)) assembled directly from the symbol band.
inline Eigen::MatrixXcd toeplitz_beta(Complex z, int k) {
  return toeplitz_matrix(beta_symbol(z), k);
}

// The z-free parts of T_k(beta(.; z)) = T0 - 2 z T1 + z^2 I, viewed as a
// monic quadratic pencil in z.  T0 is the Toeplitz section of (t^{-1} + t)^2,
// which equals P_k H0^2 P_k + a unit entry at (1,1); T1 is the free Jacobi
// section.
inline QuadraticPencil toeplitz_pencil(int k) {
  Eigen::MatrixXd t0 = build_h_squared(Potential::zero(), k);
  t0(0, 0) += 1.0;
  return make_pencil(std::move(t0), -2.0 * build_h(Potential::zero(), k));
}

// Roots in z of det T_k(beta(.; z)) = 0, with the same linearization,
// balancing, and residual conventions as the Schrodinger pencil.
inline SpectralPointSet toeplitz_pencil_roots(int k, ResidualPolicy policy = ResidualPolicy::compute) {
  return pencil_spectrum(toeplitz_pencil(k), policy);
}

// --- finite-section diagnostics -------------------------------------------

struct FiniteSectionError {
  double error = 0.0;
  bool singular = false;  // the k x k section was numerically singular
};

// || T_k^{-1} delta_j - T^{-1} delta_j || with the infinite-section solve
// replaced by a reference section of dimension k_ref >= 4k: the first k
// coordinates are compared directly and the remaining reference coordinates
// are counted in the norm.  j is 1-based and restricted to the first half of
// the section, where the theory applies.
inline FiniteSectionError finite_section_error(Complex z, int k, int j, int k_ref) {
  detail::check_valid_symbol_point(z, "finite_section_error");
  if (k < 1) throw std::invalid_argument("finite_section_error: k must be >= 1");
  if (j < 1 || j > k / 2)
    throw std::invalid_argument("finite_section_error: column j must satisfy 1 <= j <= k/2 (j = " +
                                std::to_string(j) + ", k = " + std::to_string(k) + ")");
  if (k_ref < 4 * k)
    throw std::invalid_argument("finite_section_error: reference dimension must be >= 4k (k_ref = " +
                                std::to_string(k_ref) + ")");

  const Eigen::MatrixXcd t_ref = toeplitz_beta(z, k_ref);
  Eigen::VectorXcd e_ref = Eigen::VectorXcd::Zero(k_ref);
  e_ref(j - 1) = 1.0;
  const Eigen::VectorXcd x_ref = t_ref.partialPivLu().solve(e_ref);

  const Eigen::MatrixXcd t_k = toeplitz_beta(z, k);
  Eigen::VectorXcd e_k = Eigen::VectorXcd::Zero(k);
  e_k(j - 1) = 1.0;
  const Eigen::VectorXcd x_k = t_k.partialPivLu().solve(e_k);

  FiniteSectionError out;
  // An invertible symbol does not make every *section* invertible: z can be a
  // root of the section determinant.  LU is backward stable, so its solve
  // residual stays small even then; singularity has to be detected from the
  // smallest singular value, measured against the symbol's own scale.
  const double sigma_floor = 1e-12 * beta_sup_norm(z);
  if (!x_k.allFinite() || !x_ref.allFinite() ||
      smallest_singular_value_estimate(t_k) <= sigma_floor ||
      smallest_singular_value_estimate(t_ref) <= sigma_floor) {
    out.error = std::numeric_limits<double>::infinity();
    out.singular = true;
    return out;
  }
  const double head = (x_k - x_ref.head(k)).squaredNorm();
  const double tail = x_ref.tail(k_ref - k).squaredNorm();
  out.error = std::sqrt(head + tail);
  return out;
}

// --- stability constants ----------------------------------------------------
//
// The weighted coefficient sums of beta^{-1},
//   c1 = sum |n|^p |coeff(n)|,   c2 = (sum |n|^{2p} |coeff(n)|^2)^{1/2},
// combine with the (reported) inverse-norm proxies into the stability
// constant
//   c_bar = M~ ||beta||_inf (2 M c1 ||beta||_inf + 2^p c2 + c1) + 2^p c2,
// which dominates the finite-section error ||T_k^{-1} delta_j - T^{-1} delta_j||
// by c_bar / k^p for columns j <= k/2.  M~ approximates ||T^{-1}(beta)|| by a
// reference section and M is the sup over the computed dyadic sections; both
// are bounded by the analytic Wiener-Hopf product bound, also reported.

struct StabilityConstants {
  double p = 1.0;
  double c1 = 0.0, c2 = 0.0;
  double symbol_sup = 0.0;           // ||beta||_inf on the circle
  double inverse_norm_ref = 0.0;     // ||T_{k_ref}^{-1}(beta)||  (the M~ proxy)
  double section_sup = 0.0;          // max over dyadic k <= k_ref of ||T_k^{-1}||  (M)
  double factorization_bound = 0.0;  // ||beta_+^{-1}||_inf ||beta_-^{-1}||_inf = |zeta|^2/(|zeta|-1)^4
  double c_bar = 0.0;
  int k_ref = 0;
  double coeff_tail = 0.0;  // weighted-tail indicator for the c1/c2 sums
};

inline StabilityConstants stability_constants(Complex z, double p, int k_ref = 256) {
  if (!(p >= 1.0)) throw std::invalid_argument("stability_constants: weight exponent p must be >= 1");
  detail::check_valid_symbol_point(z, "stability_constants");
  if (k_ref < 8) throw std::invalid_argument("stability_constants: k_ref must be >= 8");

  StabilityConstants out;
  out.p = p;
  out.k_ref = k_ref;
  out.symbol_sup = beta_sup_norm(z);

  const Complex zeta = outer_quadratic_root(z);
  const double az = std::abs(zeta);
  out.factorization_bound = (az * az) / std::pow(az - 1.0, 4);

  // Weighted sums with doubling of the window until they stabilize.
  double c1 = 0.0, c2sq = 0.0, tail = 0.0;
  for (int window = 64;; window *= 2) {
    const InverseSymbolCoeffs coeffs = inverse_symbol_coeffs(z, window);
    double s1 = 0.0, s2 = 0.0;
    for (int n = 1; n <= window; ++n) {
      const double mag = std::abs(coeffs.c[n]);
      const double wgt = std::pow(double(n), p);
      s1 += 2.0 * wgt * mag;
      s2 += 2.0 * wgt * wgt * mag * mag;
    }
    const double wtail = coeffs.tail_bound * std::pow(double(2 * window), p);
    if (std::abs(s1 - c1) <= 1e-13 * s1 && wtail <= 1e-13 * s1) {
      c1 = s1;
      c2sq = s2;
      tail = wtail;
      break;
    }
    c1 = s1;
    c2sq = s2;
    tail = wtail;
    if (window >= 65536)
      throw std::runtime_error("stability_constants: weighted sums did not stabilize (z too close to [-2,2])");
  }
  out.c1 = c1;
  out.c2 = std::sqrt(c2sq);
  out.coeff_tail = tail;

  // Inverse-norm proxies over a dyadic ladder of sections up to k_ref.
  double sup = 0.0, at_ref = 0.0;
  for (int k = 16; k <= k_ref; k *= 2) {
    const double sigma = smallest_singular_value_estimate(toeplitz_beta(z, k));
    if (sigma == 0.0) throw std::runtime_error("stability_constants: singular Toeplitz section at k = " +
                                               std::to_string(k));
    const double inv_norm = 1.0 / sigma;
    sup = std::max(sup, inv_norm);
    if (k == k_ref) at_ref = inv_norm;
  }
  if (at_ref == 0.0) {  // k_ref not a power-of-two multiple of 16; evaluate it directly
    const double sigma = smallest_singular_value_estimate(toeplitz_beta(z, k_ref));
    if (sigma == 0.0) throw std::runtime_error("stability_constants: singular reference section");
    at_ref = 1.0 / sigma;
    sup = std::max(sup, at_ref);
  }
  out.inverse_norm_ref = at_ref;
  out.section_sup = sup;

  const double two_p = std::pow(2.0, p);
  out.c_bar = out.inverse_norm_ref * out.symbol_sup *
                  (2.0 * out.section_sup * out.c1 * out.symbol_sup + two_p * out.c2 + out.c1) +
              two_p * out.c2;
  return out;
}

// --- Widom identity check ---------------------------------------------------
//
// For an invertible banded symbol, T^{-1}(beta) - T(beta^{-1}) equals
// Lambda := T^{-1}(beta) H(beta) H(beta~^{-1}) (a trace-class identity; here
// beta~ = beta by symmetry).  Truncated to a k x k section the inverse picks
// up a reflected copy of the correction in the opposite corner:
//   P_k T_k^{-1} P_k - T_k(beta^{-1}) ~ Lambda_k + W_k Lambda_k W_k,
// where W_k is the index flip.  `residual` measures that corrected identity
// (it decays to 0 as k grows); `literal` omits the reflected corner and
// stalls at `corner_norm`, the corner term's own norm, which is reported for
// diagnosis.  Lambda_k is evaluated with the exact triangular-Toeplitz
// truncated inverse T_k(beta_+^{-1}) T_k(beta_-^{-1}) so the check does not
// reuse the section inverse it is probing.
struct WidomCheck {
  int dim = 0;
  double residual = 0.0;
  double literal = 0.0;
  double corner_norm = 0.0;
};

inline WidomCheck widom_check(Complex z, int k) {
  detail::check_valid_symbol_point(z, "widom_check");
  if (k < 1) throw std::invalid_argument("widom_check: k must be >= 1");

  const Complex zeta = outer_quadratic_root(z);
  const InverseSymbolCoeffs inv = inverse_symbol_coeffs(z, 2 * k);

  const Eigen::MatrixXcd t_beta = toeplitz_beta(z, k);
  const Eigen::MatrixXcd t_inv_section = t_beta.partialPivLu().inverse();
  const Eigen::MatrixXcd t_beta_inv = toeplitz_from([&inv](int n) { return inv.coeff(n); }, k);
  const Eigen::MatrixXcd h_beta = hankel_matrix(beta_symbol(z), k);
  const Eigen::MatrixXcd h_beta_inv = hankel_from([&inv](int n) { return inv.coeff(n); }, k);

  // Triangular Toeplitz factors of the inverse: T(beta_+^{-1}) is lower
  // triangular (coefficients at m >= 0), T(beta_-^{-1}) upper.
  const Eigen::MatrixXcd lower =
      toeplitz_from([&zeta](int n) { return plus_inverse_coeff(zeta, n); }, k);
  const Eigen::MatrixXcd upper =
      toeplitz_from([&zeta](int n) { return plus_inverse_coeff(zeta, -n); }, k);
  const Eigen::MatrixXcd truncated_inverse = lower * upper;

  const Eigen::MatrixXcd hankel_product = h_beta * h_beta_inv;
  const Eigen::MatrixXcd lambda = truncated_inverse * hankel_product;
  const Eigen::MatrixXcd difference = t_inv_section - t_beta_inv;

  WidomCheck out;
  out.dim = k;
  out.literal = spectral_norm(difference - t_inv_section * hankel_product);
  out.corner_norm = spectral_norm(lambda);
  out.residual = spectral_norm(difference - lambda - lambda.reverse().eval());
  return out;
}

inline double widom_residual(Complex z, int k) { return widom_check(z, k).residual; }

}  // namespace spec2lab
