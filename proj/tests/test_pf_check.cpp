#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pfforge/error.hpp"
#include "pfforge/pf_check.hpp"
#include "pfforge/series.hpp"

using namespace pfforge;

TEST_SUITE("pf_check") {
  TEST_CASE("1/(1-z)^2 is strictly PF_2 on its window") {
    const CoeffSeq c = coeffs_inv_pow(2, 101);
    const PFVerdict v = check_contiguous(c, 2, 100);
    CHECK(v.status == PFStatus::pass_strict);
    CHECK(v.strictness_gap == Rational(1));
    CHECK_FALSE(v.witness);
  }

  TEST_CASE("[1,0,1] fails order 2 with the 2x2 witness") {
    const CoeffSeq c({Rational(1), Rational(0), Rational(1)});
    const PFVerdict v = check_all_minors(c, 2, 2);
    REQUIRE(v.status == PFStatus::fail);
    REQUIRE(v.witness);
    CHECK(v.witness->spec.rows == std::vector<Index>{0, 1});
    CHECK(v.witness->spec.cols == std::vector<Index>{1, 2});
    CHECK(v.witness->det == -1);
    CHECK(check_all_minors(c, 1, 2).status == PFStatus::pass_nonneg);
  }

  TEST_CASE("strict and non-strict outcomes") {
    // 1 + z: every minor >= 0, some vanish.
    const CoeffSeq c({Rational(1), Rational(1), Rational(0), Rational(0)});
    CHECK(check_all_minors(c, 3, 3).status == PFStatus::pass_nonneg);
    CHECK(check_contiguous(c, 2, 1).status == PFStatus::pass_strict);
    const PFVerdict v = check_contiguous(c, 2, 2);
    CHECK(v.status == PFStatus::fail);
    CHECK(v.strictness_gap == Rational(0));
    const CoeffSeq all_pos = coeffs_inv_pow(3, 4);
    // Entries below the diagonal are 0, so the definition check is never strict.
    CHECK(check_all_minors(all_pos, 1, 4).status == PFStatus::pass_nonneg);
  }

  TEST_CASE("contiguous check needs the full window") {
    const CoeffSeq c = coeffs_inv_pow(2, 10);
    CHECK_THROWS_AS(check_contiguous(c, 2, 10), Error);
    CHECK_NOTHROW(check_contiguous(c, 2, 9));
  }

  TEST_CASE("budget is enforced before scanning") {
    const CoeffSeq c = coeffs_inv_pow(2, 30);
    try {
      check_all_minors(c, 3, 30, ScanOptions{100, 1});
      FAIL("expected budget_exceeded");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::budget_exceeded);
    }
  }

  TEST_CASE("all-minor check agrees with brute force") {
    std::mt19937_64 rng(1234);
    int failures = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const bool nonneg = trial % 2 == 0;
      const CoeffSeq c = oracle::random_seq(rng, 6, 3, nonneg);
      for (std::size_t r = 1; r <= 3; ++r) {
        const PFVerdict v = check_all_minors(c, r, 4);
        const auto brute = oracle::brute_pf(c, r, 4);
        CHECK(v.passed() == !brute.has_value());
        if (brute) {
          ++failures;
          REQUIRE(v.witness);
          CHECK(v.witness->spec.rows == brute->rows);
          CHECK(v.witness->spec.cols == brute->cols);
          CHECK(v.witness->det == brute->det);
        }
      }
    }
    CHECK(failures > 0);
  }

  TEST_CASE("verdicts do not depend on the worker count") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
      const CoeffSeq c = oracle::random_seq(rng, 12, 4, true);
      const PFVerdict one = check_all_minors(c, 3, 11, {kDefaultMinorBudget, 1});
      for (std::size_t jobs : {2u, 3u, 8u}) {
        CHECK(check_all_minors(c, 3, 11, {kDefaultMinorBudget, jobs}) == one);
        CHECK(check_contiguous(c, 3, 9, jobs) == check_contiguous(c, 3, 9, 1));
      }
    }
  }

  TEST_CASE("Schoenberg certificate labels") {
    const CoeffSeq c = coeffs_inv_pow(4, 30);
    const SchoenbergCertificate cert = schoenberg_certificate(c, 3, 20, true);
    CHECK(cert.certified);
    CHECK(cert.label == kConditionalLabel);
    REQUIRE(cert.ratios);
    CHECK(cert.ratios->non_increasing);
    const CoeffSeq bad({Rational(1), Rational(0), Rational(1), Rational(1)});
    const SchoenbergCertificate none = schoenberg_certificate(bad, 2, 2, true);
    CHECK_FALSE(none.certified);
    CHECK(none.label == "no certificate");
  }

  TEST_CASE("status names round trip") {
    for (PFStatus s : {PFStatus::pass_nonneg, PFStatus::pass_strict, PFStatus::fail}) {
      CHECK(parse_pf_status(to_string(s)) == s);
    }
  }
}
