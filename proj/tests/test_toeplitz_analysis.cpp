// Toeplitz sections of the squared-shift symbol: determinant roots,
// finite-section solve errors against a large reference section, stability
// constants, and the corrected inverse-correction identity.

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include <spec2lab/point_metrics.hpp>
#include <spec2lab/toeplitz_analysis.hpp>

#include "oracle_helpers.hpp"

using Catch::Matchers::ContainsSubstring;
using spec2lab::Complex;
using spec2lab_test::closed_form_inverse_beta_coeff;
using spec2lab_test::near;
using spec2lab_test::near_rel;

namespace {

double max_interval_distance(const std::vector<Complex>& pts) {
  double worst = 0.0;
  for (const Complex& z : pts) worst = std::max(worst, spec2lab::interval_distance(z));
  return worst;
}

}  // namespace

// --- sections and the section pencil ---------------------------------------------

TEST_CASE("toeplitz_beta matches the symbol section and the free pencil plus corner") {
  spec2lab_test::DetRng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex z(rng.uniform(-3, 3), rng.uniform(-3, 3));
    const int k = 3 + trial;
    const Eigen::MatrixXcd direct = spec2lab::toeplitz_beta(z, k);
    const Eigen::MatrixXcd via_symbol = spec2lab::toeplitz_matrix(spec2lab::beta_symbol(z), k);
    REQUIRE((direct - via_symbol).cwiseAbs().maxCoeff() == 0.0);

    // The free-operator pencil differs from the Toeplitz section by exactly
    // the (1,1) unit that the u(0) = 0 boundary removes.
    const spec2lab::QuadraticPencil free_pencil =
        spec2lab::build_pencil(spec2lab::Potential::zero(), k);
    Eigen::MatrixXcd diff = direct - free_pencil(z);
    REQUIRE(std::abs(diff(0, 0) - 1.0) <= 1e-14);
    diff(0, 0) = 0.0;
    REQUIRE(diff.cwiseAbs().maxCoeff() <= 1e-14);

    // toeplitz_pencil bakes that corner in, so it evaluates to the section.
    const spec2lab::QuadraticPencil tp = spec2lab::toeplitz_pencil(k);
    REQUIRE((tp(z) - direct).cwiseAbs().maxCoeff() <= 1e-13 * direct.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("section determinant roots: count, symmetries, and spread decay") {
  const auto set60 = spec2lab::toeplitz_pencil_roots(60, spec2lab::ResidualPolicy::skip);
  REQUIRE(set60.points.size() == 120);
  REQUIRE(spec2lab::multiset_conjugate_symmetric(set60.points, 1e-10));
  REQUIRE(spec2lab::multiset_negation_symmetric(set60.points, 1e-10));

  const auto set120 = spec2lab::toeplitz_pencil_roots(120, spec2lab::ResidualPolicy::skip);
  const double d60 = max_interval_distance(set60.points);
  const double d120 = max_interval_distance(set120.points);
  // Frozen regression values for the worst distance to [-2,2].
  REQUIRE(near_rel(d60, 0.15568489679210523, 1e-6));
  REQUIRE(near_rel(d120, 0.090155555240286928, 1e-6));
  REQUIRE(d120 < d60);  // the root cloud tightens onto the interval
}

// --- finite-section errors ---------------------------------------------------------

TEST_CASE("finite-section solve errors collapse geometrically at z = 3i") {
  const Complex z(0, 3);
  const int k_ref = 512;
  const double e16 = spec2lab::finite_section_error(z, 16, 1, k_ref).error;
  const double e32 = spec2lab::finite_section_error(z, 32, 1, k_ref).error;
  const double e64 = spec2lab::finite_section_error(z, 64, 1, k_ref).error;
  const double e128 = spec2lab::finite_section_error(z, 128, 1, k_ref).error;

  // Frozen leading value plus conservative ceilings for the deep tail, which
  // shrinks like the symbol root's inverse powers.
  REQUIRE(near_rel(e16, 9.893943900077182e-09, 1e-4));
  REQUIRE(e32 <= 1e-15);
  REQUIRE(e32 >= 1e-18);
  REQUIRE(e64 <= 1e-30);
  REQUIRE(e128 <= 1e-60);

  // Halving at each doubling (the decay is far faster than 1/2 here).
  REQUIRE(e32 <= e16 / 2.0);
  REQUIRE(e64 <= e32 / 2.0);
  REQUIRE(e128 <= e64 / 2.0);
}

TEST_CASE("finite-section error is bounded by the stability constant over k") {
  const Complex z(0, 3);
  const auto sc = spec2lab::stability_constants(z, 1.0, 256);
  for (int k : {16, 32, 64}) {
    const auto fs = spec2lab::finite_section_error(z, k, 1, 512);
    REQUIRE_FALSE(fs.singular);
    REQUIRE(fs.error <= sc.c_bar / double(k));
  }
}

TEST_CASE("sections at a determinant root are flagged singular, not mis-solved") {
  // Pick the root of the k = 8 section determinant with the largest
  // imaginary part; by construction T_8(beta(.; z)) is singular there.
  const auto roots = spec2lab::toeplitz_pencil_roots(8, spec2lab::ResidualPolicy::skip);
  Complex z_sing = roots.points.front();
  for (const Complex& r : roots.points)
    if (r.imag() > z_sing.imag()) z_sing = r;
  REQUIRE(z_sing.imag() > 0.1);  // genuinely off the interval

  const auto fs = spec2lab::finite_section_error(z_sing, 8, 1, 64);
  REQUIRE(fs.singular);
  REQUIRE(std::isinf(fs.error));
}

TEST_CASE("finite-section preconditions name their parameter") {
  const Complex z(0, 3);
  REQUIRE_THROWS_WITH(spec2lab::finite_section_error(z, 0, 1, 64), ContainsSubstring("k must be >= 1"));
  REQUIRE_THROWS_WITH(spec2lab::finite_section_error(z, 16, 0, 64), ContainsSubstring("column j"));
  REQUIRE_THROWS_WITH(spec2lab::finite_section_error(z, 16, 9, 64), ContainsSubstring("column j"));
  REQUIRE_THROWS_WITH(spec2lab::finite_section_error(z, 16, 1, 63), ContainsSubstring(">= 4k"));
  REQUIRE_THROWS_WITH(spec2lab::finite_section_error(Complex(1, 0), 16, 1, 64),
                      ContainsSubstring("[-2,2]"));
}

// --- stability constants --------------------------------------------------------------

TEST_CASE("stability constants at z = 3i, weight 1: frozen regression") {
  const auto sc = spec2lab::stability_constants(Complex(0, 3), 1.0, 256);
  REQUIRE(sc.p == 1.0);
  REQUIRE(sc.k_ref == 256);
  REQUIRE(near_rel(sc.c1, 0.25877211890531621, 1e-9));
  REQUIRE(near_rel(sc.c2, 0.09180682441991965, 1e-9));
  REQUIRE(near_rel(sc.symbol_sup, 13.0, 1e-13));  // (distance from 3i to +-2)^2 = 13
  REQUIRE(near_rel(sc.inverse_norm_ref, 0.11712139480389837, 1e-6));
  REQUIRE(near_rel(sc.section_sup, 0.11712139480471975, 1e-6));
  REQUIRE(near_rel(sc.factorization_bound, 0.3879284580476044, 1e-12));
  REQUIRE(near_rel(sc.c_bar, 2.0569744566442938, 1e-6));
  REQUIRE(sc.coeff_tail <= 1e-13 * sc.c1);

  // factorization_bound is |zeta|^2 / (|zeta| - 1)^4 in closed form.
  const double az = std::abs(spec2lab::outer_quadratic_root(Complex(0, 3)));
  REQUIRE(near_rel(sc.factorization_bound, az * az / std::pow(az - 1.0, 4.0), 1e-13));
}

TEST_CASE("the weighted coefficient sum matches a brute-force tally") {
  const Complex z(0, 3);
  const Complex zeta = spec2lab::outer_quadratic_root(z);
  double brute = 0.0;
  for (int n = 1; n <= 100000; ++n)
    brute += 2.0 * double(n) * std::abs(closed_form_inverse_beta_coeff(zeta, n));
  const auto sc = spec2lab::stability_constants(z, 1.0, 256);
  REQUIRE(std::abs(sc.c1 - brute) <= 1e-10 * brute);
}

TEST_CASE("heavier index weights can only grow the weighted sums") {
  const auto p1 = spec2lab::stability_constants(Complex(0, 3), 1.0, 64);
  const auto p2 = spec2lab::stability_constants(Complex(0, 3), 2.0, 64);
  REQUIRE(p2.c1 >= p1.c1);
  REQUIRE(p2.c2 >= p1.c2);
  REQUIRE(p2.c_bar >= 0.0);
}

TEST_CASE("stability-constant preconditions") {
  REQUIRE_THROWS_WITH(spec2lab::stability_constants(Complex(0, 3), 0.5, 256),
                      ContainsSubstring("p must be >= 1"));
  REQUIRE_THROWS_WITH(spec2lab::stability_constants(Complex(0.5, 0), 1.0, 256),
                      ContainsSubstring("[-2,2]"));
  REQUIRE_THROWS_WITH(spec2lab::stability_constants(Complex(0, 3), 1.0, 4),
                      ContainsSubstring("k_ref must be >= 8"));
}

// --- inverse-correction identity -------------------------------------------------------

TEST_CASE("corrected identity residual collapses with the section size at z = 3i") {
  const Complex z(0, 3);
  const auto w4 = spec2lab::widom_check(z, 4);
  const auto w8 = spec2lab::widom_check(z, 8);
  const auto w16 = spec2lab::widom_check(z, 16);
  REQUIRE(near_rel(w4.residual, 0.0005825783675397244, 1e-6));
  REQUIRE(near_rel(w8.residual, 8.2070392269217795e-06, 1e-6));
  REQUIRE(near_rel(w16.residual, 1.046809985317546e-09, 1e-5));
  REQUIRE(w4.dim == 4);

  const auto w32 = spec2lab::widom_check(z, 32);
  REQUIRE(w32.residual <= 1e-12);

  const auto w64 = spec2lab::widom_check(z, 64);
  REQUIRE(w64.residual <= 1e-12);
  REQUIRE(near_rel(w64.corner_norm, 0.034785182568865675, 1e-9));
  // Without the reflected corner term the identity stalls at exactly the
  // corner term's own norm; spectral norms are flip-invariant.
  REQUIRE(std::abs(w64.literal - w64.corner_norm) <= 1e-12 * w64.corner_norm);
  REQUIRE(std::abs(w32.literal - w32.corner_norm) <= 1e-10 * w32.corner_norm);
}

TEST_CASE("farther symbol points give smaller identity residuals") {
  const double far_res = spec2lab::widom_residual(Complex(0, 10), 128);
  const double near_res = spec2lab::widom_residual(Complex(0, 3), 128);
  REQUIRE(far_res <= near_res);
}

TEST_CASE("identity check preconditions") {
  REQUIRE_THROWS_WITH(spec2lab::widom_check(Complex(0, 3), 0), ContainsSubstring("k must be >= 1"));
  REQUIRE_THROWS_AS(spec2lab::widom_check(Complex(1.5, 0), 8), std::domain_error);
}
