#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pfforge/deflation.hpp"
#include "pfforge/error.hpp"
#include "pfforge/series.hpp"

using namespace pfforge;

TEST_SUITE("deflation") {
  TEST_CASE("closed forms") {
    const CoeffSeq ones = deflate(coeffs_inv_pow(2, 30), Rational(1)).deflated;
    for (const auto& q : ones.coeffs()) CHECK(q == 1);
    const CoeffSeq delta = deflate(ones, Rational(1)).deflated;
    CHECK(delta[0] == 1);
    for (std::size_t k = 1; k < delta.size(); ++k) CHECK(delta[k] == 0);
    // two steps at once
    CHECK(deflate(coeffs_inv_pow(2, 30), Rational(1), 2).deflated == delta);
  }

  TEST_CASE("preconditions") {
    const CoeffSeq c({Rational(1), Rational(0), Rational(1)});
    try {
      deflate(c, Rational(1));
      FAIL("expected nonpositive_input");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::nonpositive_input);
    }
    DeflateOptions opt;
    opt.allow_nonpositive = true;
    CHECK_NOTHROW(deflate(c, Rational(1), 1, opt));
    try {
      deflate(coeffs_inv_pow(2, 3), Rational(0));
      FAIL("expected nonpositive_T");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::nonpositive_T);
    }
  }

  TEST_CASE("verdict at the reduced order") {
    DeflateOptions opt;
    opt.verdict_order = 3;
    const DeflationResult d = deflate(coeffs_inv_pow(3, 12), Rational(1), 1, opt);
    REQUIRE(d.verdict);
    CHECK(d.verdict->order_checked == 2);
    CHECK(d.verdict->passed());
  }

  TEST_CASE("radius estimate") {
    std::vector<Rational> v;
    for (int k = 0; k <= 20; ++k) v.push_back(Rational(k + 1) / pow(Rational(2), k));
    const RadiusBracket b = estimate_radius(CoeffSeq(v));
    CHECK(b.non_increasing);
    CHECK(b.T_lo == Rational(40, 21));  // c_19 / c_20
    CHECK(b.T_lo < 2);
    CHECK_FALSE(b.T_hi);
    const RadiusBracket bad = estimate_radius(CoeffSeq({Rational(1), Rational(1), Rational(4)}));
    CHECK_FALSE(bad.non_increasing);
    CHECK(bad.violations == std::vector<Index>{1});
    CHECK_THROWS_AS(estimate_radius(CoeffSeq({Rational(1), Rational(0)})), Error);
    CHECK_THROWS_AS(estimate_radius(CoeffSeq({Rational(1)})), Error);
  }

  TEST_CASE("Cauchy-Binet expansion") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
      const CoeffSeq c1 = oracle::random_seq(rng, 8, 3, true);
      const Rational eps = make_rational(1 + trial, 3);
      for (std::size_t n = 1; n <= 3; ++n) {
        for (Index k = 0; k + static_cast<Index>(n) - 1 <= 7; k += 2) {
          const CauchyBinetReport rep = cauchy_binet_check(c1, eps, k, n);
          CHECK(rep.equal);
          CHECK(rep.lhs == oracle::contiguous_minor([&](Index m) { return mollify(c1, eps, 7).at(m); }, k, n));
          CHECK(rep.distinguished == rep.distinguished_closed);
        }
      }
    }
    CHECK(exp_minor_positive(Rational(1), 3, 3) > 0);
    CHECK_THROWS_AS(exp_minor_positive(Rational(0), 0, 1), Error);
  }

  TEST_CASE("boundary limits") {
    const CoeffSeq geo(std::vector<Rational>(51, Rational(1)));
    const BoundaryLimitReport rep = boundary_limit(geo, Rational(1), 1, {Rational(1, 2), Rational(9, 10)});
    // (1 - x) * sum_{k<=50} x^k = 1 - x^51
    CHECK(rep.values[0] == 1 - pow(Rational(1, 2), 51));
    CHECK(rep.values[1] == 1 - pow(Rational(9, 10), 51));
    REQUIRE(rep.tail_estimates[0]);
    // the geometric tail is exactly x^51 / (1-x), times (1 - x)
    CHECK(*rep.tail_estimates[0] == pow(Rational(1, 2), 51));
    CHECK_FALSE(rep.tail_flags[0]);
    CHECK(rep.tail_flags[1]);
    CHECK_THROWS_AS(boundary_limit(geo, Rational(1), 1, {Rational(1)}), Error);
    CHECK_THROWS_AS(boundary_limit(geo, Rational(1), 1, {Rational(1, 2), Rational(1, 3)}), Error);
    const BoundaryLimitReport gen =
        boundary_limit([](Index) { return Rational(1); }, 50, Rational(1), 1, {Rational(1, 2), Rational(9, 10)});
    CHECK(gen.values == rep.values);
  }
}
