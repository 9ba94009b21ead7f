// Potential families, their parse grammar, and the tridiagonal /
// pentadiagonal truncation builders.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <spec2lab/operator_core.hpp>
#include <spec2lab/potential.hpp>

#include "oracle_helpers.hpp"

using Catch::Matchers::ContainsSubstring;
using spec2lab::build_h;
using spec2lab::build_h_squared;
using spec2lab::Potential;
using spec2lab_test::DetRng;

namespace {

Potential random_explicit(DetRng& rng, int len, double lo = -2.0, double hi = 2.0) {
  std::vector<double> vals(size_t(len), 0.0);
  for (double& v : vals) v = rng.uniform(lo, hi);
  return Potential::from_values(vals);
}

}  // namespace

TEST_CASE("rank-one potential is a at its site and zero elsewhere") {
  const Potential v = Potential::rank_one(3.5, 4);
  for (int n = 1; n <= 10; ++n) REQUIRE(v(n) == (n == 4 ? 3.5 : 0.0));
  REQUIRE(v.max_abs(10) == 3.5);
  REQUIRE(v.max_abs(3) == 0.0);
}

TEST_CASE("power-decay potential follows a / n^(r+1)") {
  const Potential v = Potential::power_decay(2.0, 1.5);
  for (int n = 1; n <= 6; ++n) REQUIRE(v(n) == 2.0 / std::pow(double(n), 2.5));
  REQUIRE(v.max_abs(6) == 2.0);
}

TEST_CASE("explicit potential returns its stored prefix then zeros") {
  const Potential v = Potential::from_values({1.0, -0.5, 0.25});
  REQUIRE(v(1) == 1.0);
  REQUIRE(v(2) == -0.5);
  REQUIRE(v(3) == 0.25);
  REQUIRE(v(4) == 0.0);
  REQUIRE(v(1000) == 0.0);
}

TEST_CASE("site index 0 is a boundary condition, not a site") {
  const Potential v = Potential::zero();
  REQUIRE_THROWS_AS(v(0), std::domain_error);
  REQUIRE_THROWS_AS(v(-3), std::domain_error);
}

TEST_CASE("factory validation names the offending parameter") {
  REQUIRE_THROWS_WITH(Potential::rank_one(0.0, 3), ContainsSubstring("a must be > 0"));
  REQUIRE_THROWS_WITH(Potential::rank_one(-1.0, 3), ContainsSubstring("a must be > 0"));
  REQUIRE_THROWS_WITH(Potential::rank_one(3.0, 0), ContainsSubstring("j must be >= 1"));
  REQUIRE_THROWS_WITH(Potential::power_decay(0.0, 1.0), ContainsSubstring("a must be > 0"));
  REQUIRE_THROWS_WITH(Potential::power_decay(1.0, 0.0), ContainsSubstring("r must be > 0"));
}

TEST_CASE("parse grammar round-trips every family") {
  const Potential r1 = Potential::parse("rank1:a=3,j=7");
  const auto* r1s = std::get_if<spec2lab::RankOnePotential>(&r1.spec());
  REQUIRE(r1s != nullptr);
  REQUIRE(r1s->height == 3.0);
  REQUIRE(r1s->site == 7);
  REQUIRE(r1.to_string() == "rank1:a=3,j=7");

  const Potential pd = Potential::parse("decay:a=1.5,r=2");
  const auto* pds = std::get_if<spec2lab::PowerDecayPotential>(&pd.spec());
  REQUIRE(pds != nullptr);
  REQUIRE(pds->amplitude == 1.5);
  REQUIRE(pds->rate == 2.0);

  const Potential ls = Potential::parse("list:0.5,-1,0.25");
  REQUIRE(ls(1) == 0.5);
  REQUIRE(ls(2) == -1.0);
  REQUIRE(ls(3) == 0.25);
  REQUIRE(ls(4) == 0.0);

  const Potential free = Potential::parse("list:");
  REQUIRE(free(1) == 0.0);
  REQUIRE(free.to_string() == "list:");

  // A reparse of to_string() restores identical values.
  const Potential again = Potential::parse(pd.to_string());
  REQUIRE(std::get<spec2lab::PowerDecayPotential>(again.spec()).amplitude == 1.5);
}

TEST_CASE("unparsed potentials print valid spec strings") {
  REQUIRE(Potential::rank_one(3.0, 7).to_string() == "rank1:a=3,j=7");
  REQUIRE(Potential::power_decay(1.5, 2.0).to_string() == "decay:a=1.5,r=2");
  REQUIRE(Potential::from_values({0.5, -1.0}).to_string() == "list:0.5,-1");
  REQUIRE(Potential::zero().to_string() == "list:");
}

TEST_CASE("parse errors identify the failing field") {
  REQUIRE_THROWS_WITH(Potential::parse("rank1:a=x,j=2"), ContainsSubstring("'a'"));
  REQUIRE_THROWS_WITH(Potential::parse("rank1:a=3"), ContainsSubstring("'j'"));
  REQUIRE_THROWS_WITH(Potential::parse("rank1:j=3"), ContainsSubstring("'a'"));
  REQUIRE_THROWS_WITH(Potential::parse("decay:a=1,r=oops"), ContainsSubstring("'r'"));
  REQUIRE_THROWS_WITH(Potential::parse("rank1:a=1,q=2"), ContainsSubstring("unknown field 'q'"));
  REQUIRE_THROWS_WITH(Potential::parse("blah:a=1"), ContainsSubstring("unknown family 'blah'"));
  REQUIRE_THROWS_WITH(Potential::parse("rank1"), ContainsSubstring("<family>:<args>"));
  REQUIRE_THROWS_WITH(Potential::parse("list:1,two,3"), ContainsSubstring("list entry"));
  REQUIRE_THROWS_AS(Potential::parse("rank1:a=3.5.2,j=1"), std::invalid_argument);
}

TEST_CASE("file potentials skip comments and blank lines") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "spec2lab_test_potential.txt";
  {
    std::ofstream out(path);
    out << "# leading comment\n"
        << "1.5\n"
        << "\n"
        << "  -0.25  \n"
        << "# trailing comment\n"
        << "3\n";
  }
  const Potential v = Potential::parse("file:" + path.string());
  REQUIRE(v(1) == 1.5);
  REQUIRE(v(2) == -0.25);
  REQUIRE(v(3) == 3.0);
  REQUIRE(v(4) == 0.0);
  REQUIRE(v.to_string() == "file:" + path.string());  // stays a file reference
  fs::remove(path);

  REQUIRE_THROWS_WITH(Potential::parse("file:/no/such/dir/nope.txt"),
                      ContainsSubstring("cannot open"));
}

TEST_CASE("truncated operator is the expected tridiagonal matrix") {
  const Potential v = Potential::from_values({5.0, 7.0, 9.0});
  const Eigen::MatrixXd h = build_h(v, 3);
  Eigen::MatrixXd want(3, 3);
  want << 5, 1, 0, 1, 7, 1, 0, 1, 9;
  REQUIRE((h - want).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::MatrixXd h1 = build_h(v, 1);
  REQUIRE(h1.rows() == 1);
  REQUIRE(h1(0, 0) == 5.0);
}

TEST_CASE("truncation builders reject out-of-range dimensions") {
  const Potential v = Potential::zero();
  REQUIRE_THROWS_AS(build_h(v, 0), std::domain_error);
  REQUIRE_THROWS_AS(build_h(v, -4), std::domain_error);
  REQUIRE_THROWS_WITH(build_h(v, spec2lab::max_truncation_dim + 1),
                      ContainsSubstring("dense ceiling"));
  REQUIRE_THROWS_AS(build_h_squared(v, 0), std::domain_error);
  REQUIRE_THROWS_WITH(build_h_squared(v, spec2lab::max_truncation_dim + 1),
                      ContainsSubstring("dense ceiling"));
}

TEST_CASE("squared-operator truncation entries follow the five-band formulas") {
  DetRng rng(2024);
  const int k = 9;
  const Potential v = random_explicit(rng, k + 2);
  const Eigen::MatrixXd m = build_h_squared(v, k);
  REQUIRE(m.rows() == k);
  REQUIRE((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int n = 1; n <= k; ++n) {
    const double expect_diag = (n == 1 ? 1.0 : 2.0) + v(n) * v(n);
    REQUIRE(m(n - 1, n - 1) == expect_diag);
    if (n < k) REQUIRE(m(n - 1, n) == v(n) + v(n + 1));
    if (n + 2 <= k) REQUIRE(m(n - 1, n + 1) == 1.0);
  }
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      if (std::abs(r - c) > 2) REQUIRE(m(r, c) == 0.0);
}

TEST_CASE("squared truncation equals the corner block of a larger square") {
  // Squaring an enlarged truncation and cutting back to k x k must reproduce
  // build_h_squared exactly (up to association order in two-term sums): for
  // entries within the first k rows/columns, no path reaches the cut edge.
  DetRng rng(55);
  for (int k : {1, 2, 3, 8, 23}) {
    const Potential v = random_explicit(rng, k + 2);
    const Eigen::MatrixXd big = build_h(v, k + 2);
    const Eigen::MatrixXd squared_then_cut = (big * big).topLeftCorner(k, k);
    const Eigen::MatrixXd direct = build_h_squared(v, k);
    REQUIRE((squared_then_cut - direct).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("squaring after truncation differs by exactly the far-corner unit") {
  // build_h_squared(v,k) - build_h(v,k)^2 is the rank-one matrix with a 1 at
  // the (k,k) corner: the only square path the cut removes is k -> k+1 -> k.
  DetRng rng(77);
  const std::vector<Potential> families = {
      Potential::rank_one(3.0, 3),
      Potential::power_decay(1.0, 1.0),
      random_explicit(rng, 50),
  };
  for (const Potential& v : families) {
    for (int k : {2, 5, 50}) {
      const Eigen::MatrixXd h = build_h(v, k);
      Eigen::MatrixXd diff = build_h_squared(v, k) - h * h;
      REQUIRE(std::abs(diff(k - 1, k - 1) - 1.0) <= 1e-14);
      diff(k - 1, k - 1) = 0.0;
      REQUIRE(diff.cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
}
