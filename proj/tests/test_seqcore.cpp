#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pfforge/determinant.hpp"
#include "pfforge/error.hpp"
#include "pfforge/minors.hpp"
#include "pfforge/partial_sum.hpp"

using namespace pfforge;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::io_error;
}

}  // namespace

TEST_SUITE("seqcore") {
  TEST_CASE("rational text round trip") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(-6)) == "-6");
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-17") == Rational(-17));
    for (const char* bad : {"", "1/0", "1/", "/2", "1.5", "+3", "a", "1/-2", " 1"}) {
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const Rational q = oracle::random_rational(rng, 1000, false) / 7;
      CHECK(parse_rational(to_string(q)) == q);
    }
  }

  TEST_CASE("sqrt enclosure brackets the root") {
    for (const Rational q : {Rational(0), Rational(2), Rational(1, 3), Rational(49, 4), Rational(10007)}) {
      const SqrtBounds b = sqrt_bounds(q);
      CHECK(b.lower <= b.upper);
      CHECK(b.lower * b.lower <= q);
      CHECK(b.upper * b.upper >= q);
    }
    CHECK(sqrt_bounds(Rational(9, 4)).lower == Rational(3, 2));
  }

  TEST_CASE("window reads") {
    const CoeffSeq c({Rational(1), Rational(2), Rational(3)});
    CHECK(c.window() == 2);
    CHECK(c.at(-5) == 0);
    CHECK(c.at(2) == 3);
    CHECK(code_of([&] { (void)c.at(3); }) == ErrorCode::index_out_of_window);
    CHECK(toeplitz_entry(c, 1, 3) == 3);
    CHECK(toeplitz_entry(c, 2, 1) == 0);
    CHECK_THROWS_AS(CoeffSeq(std::vector<Rational>{}), Error);
    CHECK_THROWS_AS(CoeffSeq({Rational(2)}, true), Error);
    CHECK_NOTHROW(CoeffSeq({Rational(1)}, true));
  }

  TEST_CASE("scaling multiplies c_k by s^k") {
    const CoeffSeq c({Rational(1), Rational(1), Rational(1)});
    const CoeffSeq s = scale_sequence(c, Rational(2, 3));
    CHECK(s[2] == Rational(4, 9));
    CHECK_THROWS_AS(scale_sequence(c, Rational(0)), Error);
  }

  TEST_CASE("integerize keeps exact values") {
    std::mt19937_64 rng(5);
    const CoeffSeq c = oracle::random_seq(rng, 12, 9, false);
    const IntegerWindow iw = integerize(c, 11);
    for (std::size_t k = 0; k < 12; ++k) CHECK(Rational(iw.values[k]) / Rational(iw.denom) == c[k]);
  }

  TEST_CASE("determinants agree with cofactor expansion") {
    std::mt19937_64 rng(42);
    for (std::size_t n = 1; n <= 5; ++n) {
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        std::vector<Rational> flat;
        std::vector<Integer> ints;
        for (auto& row : m) {
          for (auto& x : row) {
            // Sparse entries exercise pivoting.
            x = (rng() % 3 == 0) ? Rational(0) : oracle::random_rational(rng, 5, false);
            flat.push_back(x);
            ints.push_back(Integer(floor(x.get_d() * 1)));
          }
        }
        CHECK(determinant(flat, n) == oracle::cofactor_det(m));
        std::vector<std::vector<Rational>> mi(n, std::vector<Rational>(n));
        for (std::size_t i = 0; i < n * n; ++i) mi[i / n][i % n] = Rational(ints[i]);
        CHECK(Rational(bareiss_determinant(ints, n)) == oracle::cofactor_det(mi));
      }
    }
  }

  TEST_CASE("minor specs") {
    const MinorSpec s = contiguous_spec(3, 2);
    CHECK(s.rows == std::vector<Index>{0, 1});
    CHECK(s.cols == std::vector<Index>{3, 4});
    CHECK_THROWS_AS((MinorSpec{{1, 0}, {0, 1}}).validate(), Error);
    CHECK_THROWS_AS((MinorSpec{{0}, {0, 1}}).validate(), Error);
    CHECK_THROWS_AS((MinorSpec{{-1}, {0}}).validate(), Error);
  }

  TEST_CASE("minor_det matches the oracle") {
    std::mt19937_64 rng(3);
    const CoeffSeq c = oracle::random_seq(rng, 8, 4, false);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& rows : oracle::subsets(4, n)) {
        for (const auto& cols : oracle::subsets(5, n)) {
          CHECK(minor_det(c, MinorSpec{rows, cols}) == oracle::general_minor(c, rows, cols));
        }
      }
    }
  }

  TEST_CASE("enumerator visits every minor once, in order") {
    for (Index w : {2, 4}) {
      for (std::size_t r = 1; r <= 3; ++r) {
        MinorEnumerator en(w, r);
        std::vector<MinorSpec> seen;
        while (auto s = en.next()) seen.push_back(*s);
        CHECK(Integer(static_cast<unsigned long>(seen.size())) == count_minors(w, r));
        std::vector<MinorSpec> expected;
        for (std::size_t n = 1; n <= r; ++n) {
          for (const auto& rows : oracle::subsets(w, n)) {
            for (const auto& cols : oracle::subsets(w, n)) expected.push_back({rows, cols});
          }
        }
        CHECK(seen == expected);
      }
    }
  }

  TEST_CASE("partial sums match direct evaluation") {
    std::mt19937_64 rng(8);
    const Rational x(7, 9);
    for (std::size_t len : {1u, 2u, 3u, 7u, 16u, 33u}) {
      const CoeffSeq c = oracle::random_seq(rng, len, 5, false);
      PartialSum ps(x);
      Rational direct = 0, xp = 1;
      for (std::size_t k = 0; k < len; ++k) {
        ps.push(c[k]);
        direct += c[k] * xp;
        xp *= x;
        CHECK(ps.value() == direct);
      }
      CHECK(ps.count() == len);
    }
  }
}
