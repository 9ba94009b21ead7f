#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "spec2lab/potential.hpp"

namespace spec2lab {

// Dense-solver ceiling for the truncation builders; the downstream companion
// eigenproblem is dense, so larger sections are out of scope.
inline constexpr int max_truncation_dim = 2048;

namespace detail {
inline void check_truncation_dim(int k, const char* who) {
  if (k < 1) throw std::domain_error(std::string(who) + ": dimension k must be >= 1");
  if (k > max_truncation_dim)
    throw std::domain_error(std::string(who) + ": dimension k exceeds the dense ceiling " +
                            std::to_string(max_truncation_dim));
}
}  // namespace detail

// k x k truncation P_k H P_k: tridiagonal with unit off-diagonals and v on
// the diagonal (Jacobi matrix of the half-line operator).
inline Eigen::MatrixXd build_h(const Potential& v, int k) {
  detail::check_truncation_dim(k, "build_h");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(k, k);
  for (int n = 1; n <= k; ++n) {
    h(n - 1, n - 1) = v(n);
    if (n < k) {
      h(n - 1, n) = 1.0;
      h(n, n - 1) = 1.0;
    }
  }
  return h;
}

// k x k truncation P_k H^2 P_k, assembled directly from the five-band entry
// formulas of the squared half-line operator:
//   (n,n)   = 2 + v(n)^2 for n >= 2;  (1,1) = 1 + v(1)^2  (the u(0)=0 corner)
//   (n,n+1) = v(n) + v(n+1)
//   (n,n+2) = 1
// This is truncation-after-squaring, NOT the square of the truncation: it
// differs from (P_k H P_k)^2 by exactly a unit entry at (k,k), the 1*1 path
// through site k+1.
inline Eigen::MatrixXd build_h_squared(const Potential& v, int k) {
  detail::check_truncation_dim(k, "build_h_squared");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k, k);
  for (int n = 1; n <= k; ++n) {
    const double vn = v(n);
    m(n - 1, n - 1) = (n == 1 ? 1.0 : 2.0) + vn * vn;
    if (n < k) {
      const double off = vn + v(n + 1);
      m(n - 1, n) = off;
      m(n, n - 1) = off;
    }
    if (n + 2 <= k) {
      m(n - 1, n + 1) = 1.0;
      m(n + 1, n - 1) = 1.0;
    }
  }
  return m;
}

}  // namespace spec2lab
