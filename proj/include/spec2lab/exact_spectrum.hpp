#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spec2lab/core.hpp"
#include "spec2lab/linalg.hpp"
#include "spec2lab/potential.hpp"

namespace spec2lab {

// ===========================================================================
// Characteristic polynomial of the rank-one bound state
//
// For v(n) = a * [n == j] the eigenvalue equation above the band reduces to a
// scalar condition on the multiplier x (lambda = x + 1/x, x > 1):
//     q(x) = x^(2j+1) - a x^(2j) - x^(2j-1) + a = 0.
// q(1) = q(-1) = 0 always; for a > 2 there is exactly one root x_a > 1, which
// sits in (a, a + 1/a), and lambda_a = x_a + 1/x_a is the unique eigenvalue.
//
// The evaluation below is grouped as  x^(2j-1) * (x (x - a) - 1) + a  so the
// huge leading terms are combined before the O(a) constant is added; the
// naive term-by-term sum loses the root entirely for large a^(2j).
//
// Everything on this path is templated on the scalar so tests can re-run the
// same code in extended precision and separate algorithmic error from
// double-precision roundoff.
// ===========================================================================

template <class Scalar>
Scalar char_poly_eval(Scalar a, int j, Scalar x) {
  Scalar p = Scalar(1);
  for (int i = 0; i < 2 * j - 1; ++i) p *= x;
  return p * (x * (x - a) - Scalar(1)) + a;
}

template <class Scalar>
Scalar char_poly_deriv(Scalar a, int j, Scalar x) {
  // q'(x) = x^(2j-2) * ((2j+1) x^2 - 2 j a x - (2j-1))
  Scalar p = Scalar(1);
  for (int i = 0; i < 2 * j - 2; ++i) p *= x;
  return p * (Scalar(2 * j + 1) * x * x - Scalar(2 * j) * a * x - Scalar(2 * j - 1));
}

// Magnitude scale of q near x (sum of absolute term magnitudes), used to turn
// `rel_tol` into an absolute residual target.
template <class Scalar>
Scalar char_poly_scale(Scalar a, int j, Scalar x) {
  Scalar ax = x < Scalar(0) ? -x : x;
  Scalar p = Scalar(1);
  for (int i = 0; i < 2 * j - 1; ++i) p *= ax;
  return p * (ax * (ax + a) + Scalar(1)) + a;
}

// Safeguarded Newton iteration on q inside a sign-changing bracket
// [lo, hi] with q(lo) < 0 < q(hi).  Converges when the residual falls below
// rel_tol * scale or the iterates stop moving at the scalar's resolution.
template <class Scalar>
Scalar refine_char_root(Scalar a, int j, Scalar lo, Scalar hi, Scalar rel_tol) {
  if (!(lo < hi)) throw std::invalid_argument("refine_char_root: empty bracket");
  if (!(char_poly_eval(a, j, lo) < Scalar(0)) || !(char_poly_eval(a, j, hi) > Scalar(0)))
    throw std::domain_error("refine_char_root: bracket does not straddle a sign change");

  Scalar x = (lo + hi) / Scalar(2);
  for (int it = 0; it < 500; ++it) {
    const Scalar q = char_poly_eval(a, j, x);
    if (q == Scalar(0)) return x;
    if (q < Scalar(0))
      lo = x;
    else
      hi = x;
    const Scalar aq = q < Scalar(0) ? -q : q;
    if (aq <= rel_tol * char_poly_scale(a, j, x)) return x;

    const Scalar d = char_poly_deriv(a, j, x);
    Scalar next = (d == Scalar(0)) ? (lo + hi) / Scalar(2) : x - q / d;
    if (!(next > lo && next < hi)) next = (lo + hi) / Scalar(2);
    if (next == x) return x;  // bracket exhausted at this precision
    x = next;
  }
  return x;
}

namespace detail {
inline void check_bound_state_params(double a, int j, const char* who) {
  if (!(a > 2.0))
    throw std::domain_error(std::string(who) + ": coupling a must be > 2 (got " +
                            format_sig17(a) + "); below that no isolated eigenvalue splits off");
  if (j < 3)
    throw std::domain_error(std::string(who) + ": site j must be >= 3 (got " + std::to_string(j) + ")");
}
}  // namespace detail

// The multiplier root x_a in (a, a + 1/a).  The bracket endpoints have exact
// signs:  q(a) = a - a^(2j-1) < 0  and  q(a + 1/a) = x^(2j-1)/a^2 + a > 0.
inline double char_root(double a, int j) {
  detail::check_bound_state_params(a, j, "char_root");
  return refine_char_root(a, j, a, a + 1.0 / a, 1e-15);
}

// The isolated eigenvalue lambda_a = x_a + 1/x_a > 2.
inline double lambda_a(double a, int j) {
  const double x = char_root(a, j);
  return x + 1.0 / x;
}

// Low-to-high coefficient vector of q, ready for the companion-matrix root
// finder.  Exposed as a struct so callers can also evaluate or print it.
struct CharPoly {
  double a = 0.0;
  int j = 0;

  CharPoly(double a_, int j_) : a(a_), j(j_) { detail::check_bound_state_params(a_, j_, "CharPoly"); }

  int degree() const { return 2 * j + 1; }

  Eigen::VectorXd coefficients() const {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * j + 2);
    c(0) = a;
    c(2 * j - 1) = -1.0;
    c(2 * j) = -a;
    c(2 * j + 1) = 1.0;
    return c;
  }

  double operator()(double x) const { return char_poly_eval(a, j, x); }
};

// All 2j+1 roots of q in the complex plane (companion matrix).
inline std::vector<Complex> q_roots_all(double a, int j) {
  return polynomial_roots(CharPoly(a, j).coefficients());
}

// ===========================================================================
// Resonance candidates
//
// Besides x_a and the persistent pair x = +-1, q carries 2j-2 non-real roots.
// Each non-real root x maps to the complex energy x + 1/x; since that map is
// invariant under x -> 1/x, every candidate is normalized to its exterior
// representative (|x| >= 1) before reporting.  The computed roots themselves
// all sit just *inside* the unit circle, so filtering on |x| > 1 without the
// normalization would silently discard every candidate.  Candidates whose
// modulus ties the unit circle to ~1e-10 are flagged degenerate: their
// energies sit on the band boundary, where the exterior/interior distinction
// loses meaning.
// ===========================================================================

struct ResonanceCandidate {
  Complex root;    // exterior representative, |root| >= 1 (up to roundoff)
  Complex value;   // root + 1/root
  bool degenerate = false;
};

inline std::vector<ResonanceCandidate> resonance_candidates(double a, int j) {
  std::vector<ResonanceCandidate> out;
  for (const Complex& r : q_roots_all(a, j)) {
    if (std::abs(r.imag()) <= 1e-6 * std::max(1.0, std::abs(r))) continue;  // real roots: x_a, +-1
    Complex x = r;
    if (std::abs(x) < 1.0) x = 1.0 / x;
    ResonanceCandidate c;
    c.root = x;
    c.value = x + 1.0 / x;
    c.degenerate = std::abs(std::abs(x) - 1.0) <= 1e-10;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const ResonanceCandidate& lhs, const ResonanceCandidate& rhs) {
    if (lhs.value.real() != rhs.value.real()) return lhs.value.real() < rhs.value.real();
    return lhs.value.imag() < rhs.value.imag();
  });
  return out;
}

// ===========================================================================
// Transfer matrices and eigenvector recurrences
// ===========================================================================

// One-step transfer matrix at energy lambda across site n:
//   (u(n), u(n+1))^T  ->  (u(n+1), u(n+2))^T.
inline Eigen::Matrix2d transfer_matrix(double lambda, double v_n) {
  Eigen::Matrix2d t;
  t << 0.0, 1.0, -1.0, lambda - v_n;
  return t;
}

inline Eigen::Matrix2d free_transfer_matrix(double lambda) { return transfer_matrix(lambda, 0.0); }

// Multipliers of the free transfer matrix: the roots of mu^2 - lambda mu + 1.
// Returned as (larger, smaller) by modulus; their product is 1.
inline std::pair<Complex, Complex> free_multipliers(double lambda) {
  const Complex disc = std::sqrt(Complex(lambda * lambda - 4.0, 0.0));
  Complex big = (Complex(lambda, 0.0) + disc) / 2.0;
  Complex small = (Complex(lambda, 0.0) - disc) / 2.0;
  if (std::abs(big) < std::abs(small)) std::swap(big, small);
  return {big, small};
}

// Solution sequence u(0..n_max) of the three-term recurrence
//   u(n+1) = (lambda - v(n)) u(n) - u(n-1),   u(0) = 0, u(1) = 1,
// for the rank-one potential v(n) = a [n == j].  Templated on the scalar:
// above the band the recurrence carries a growing mode x^n and a decaying
// mode x^(-n); past the impurity the true eigenvector is purely decaying, so
// forward recurrence in double precision is overwhelmed by roundoff feeding
// the growing mode after ~8 sites.  Tests that probe the decay law
// instantiate this in extended precision.
template <class Scalar>
std::vector<Scalar> transfer_sequence(Scalar a, int j, Scalar lambda, int n_max) {
  if (n_max < 1) throw std::invalid_argument("transfer_sequence: n_max must be >= 1");
  std::vector<Scalar> u(size_t(n_max) + 1);
  u[0] = Scalar(0);
  u[1] = Scalar(1);
  for (int n = 1; n < n_max; ++n) {
    const Scalar v_n = (n == j) ? a : Scalar(0);
    u[size_t(n) + 1] = (lambda - v_n) * u[size_t(n)] - u[size_t(n) - 1];
  }
  return u;
}

// Same recurrence for an arbitrary potential, in double precision.
// Returns u(0..n_max); u(0) = 0 is the boundary value, sites start at 1.
inline Eigen::VectorXd eigenvector(const Potential& v, double lambda, int n_max) {
  if (n_max < 1) throw std::invalid_argument("eigenvector: n_max must be >= 1");
  Eigen::VectorXd u(n_max + 1);
  u(0) = 0.0;
  u(1) = 1.0;
  for (int n = 1; n < n_max; ++n) u(n + 1) = (lambda - v(n)) * u(n) - u(n - 1);
  return u;
}

// Bound-state profile for the rank-one potential.  lambda must lie above the
// band (the decay setting); inside the band the profile is oscillatory and
// this entry point refuses it rather than return something that looks like
// an eigenvector but is not square-summable.
inline Eigen::VectorXd eigenvector(double a, int j, double lambda, int n_max) {
  detail::check_bound_state_params(a, j, "eigenvector");
  if (!(lambda > 2.0))
    throw std::domain_error("eigenvector: lambda must exceed the band edge 2 (got " + detail::format_sig17(lambda) + ")");
  return eigenvector(Potential::rank_one(a, j), lambda, n_max);
}

// ===========================================================================
// Exact spectrum descriptor
// ===========================================================================

// The operators whose spectrum is known in closed form: the band [-2,2] plus
// finitely many isolated eigenvalues.  Available for the free potential
// (no eigenvalues) and the rank-one family with a > 2, j >= 3 (one
// eigenvalue, lambda_a).
struct SpectrumDescriptor {
  double band_lo = -2.0;
  double band_hi = 2.0;
  std::vector<double> eigenvalues;
};

inline SpectrumDescriptor spectrum_descriptor(const Potential& v) {
  SpectrumDescriptor s;
  if (const auto* r1 = std::get_if<RankOnePotential>(&v.spec())) {
    detail::check_bound_state_params(r1->height, r1->site, "spectrum_descriptor");
    s.eigenvalues.push_back(lambda_a(r1->height, r1->site));
    return s;
  }
  if (const auto* ex = std::get_if<ExplicitPotential>(&v.spec())) {
    const bool all_zero =
        std::all_of(ex->values.begin(), ex->values.end(), [](double x) { return x == 0.0; });
    if (all_zero) return s;  // free operator: just the band
  }
  throw std::domain_error(
      "spectrum_descriptor: no exact descriptor for this potential "
      "(supported: the free operator and rank1 with a > 2, j >= 3)");
}

// Distance from z to the described spectrum (band + isolated eigenvalues).
inline double dist_to_spectrum(Complex z, const SpectrumDescriptor& s) {
  const double re = z.real(), im = z.imag();
  const double clamped = std::clamp(re, s.band_lo, s.band_hi);
  double best = std::hypot(re - clamped, im);
  for (double ev : s.eigenvalues) best = std::min(best, std::hypot(re - ev, im));
  return best;
}

}  // namespace spec2lab
