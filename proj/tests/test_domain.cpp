#include <doctest.h>

#include "pfforge/domain.hpp"
#include "pfforge/error.hpp"
#include "pfforge/geometry.hpp"

using namespace pfforge;
using geometry::Point;

namespace {

Point P(long re, long im) { return Point(Rational(re), Rational(im)); }

DomainSpec square(long h, bool symmetric) {
  return DomainSpec{{P(h, -h), P(h, h), P(-h, h), P(-h, -h)}, symmetric, std::nullopt};
}

DomainSpec notched() {
  return DomainSpec{{P(1, 0), P(2, 2), P(-2, 2), P(-2, -2), P(2, -2)}, true, std::nullopt};
}

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

TEST_SUITE("domain") {
  TEST_CASE("orientation and intersections") {
    CHECK(geometry::orientation(P(0, 0), P(1, 0), P(0, 1)) == 1);
    CHECK(geometry::orientation(P(0, 0), P(1, 0), P(2, 0)) == 0);
    CHECK(geometry::segments_intersect(P(0, 0), P(2, 2), P(0, 2), P(2, 0)));
    CHECK(geometry::segments_intersect(P(0, 0), P(2, 0), P(2, 0), P(3, 5)));
    CHECK_FALSE(geometry::segments_intersect(P(0, 0), P(1, 0), P(2, 0), P(3, 0)));
    CHECK(geometry::segments_intersect(P(0, 0), P(2, 0), P(1, 0), P(3, 0)));
  }

  TEST_CASE("polygon checks") {
    CHECK_NOTHROW(geometry::check_simple_polygon(square(2, true).vertices));
    const std::vector<Point> bowtie{P(0, 0), P(2, 2), P(2, 0), P(0, 2)};
    CHECK(code_of([&] { geometry::check_simple_polygon(bowtie); }) == ErrorCode::malformed_polyline);
    CHECK(code_of([&] { geometry::check_simple_polygon({P(0, 0), P(1, 0)}); }) == ErrorCode::malformed_polyline);
    CHECK(code_of([&] { geometry::check_simple_polygon({P(0, 0), P(1, 0), P(2, 0)}); }) ==
          ErrorCode::malformed_polyline);
    CHECK(geometry::signed_area2(square(1, true).vertices) == 8);
  }

  TEST_CASE("point location and nearest points") {
    const auto sq = square(2, true).vertices;
    CHECK(geometry::locate(P(0, 0), sq) == geometry::Location::inside);
    CHECK(geometry::locate(P(2, 1), sq) == geometry::Location::boundary);
    CHECK(geometry::locate(P(2, 2), sq) == geometry::Location::boundary);
    CHECK(geometry::locate(P(3, 0), sq) == geometry::Location::outside);
    const auto near = geometry::nearest_on_boundary(Point(Rational(1), Rational(1, 2)), sq);
    CHECK(near.point == Point(Rational(2), Rational(1, 2)));
    CHECK(near.dist2 == 1);
    CHECK(geometry::nearest_on_segment(P(5, 5), P(0, 0), P(2, 0)) == P(2, 0));
  }

  TEST_CASE("validation of conditions A-C") {
    const ValidationReport sq = validate_domain(square(2, true));
    CHECK(sq.contains_origin);
    CHECK(sq.symmetric);
    CHECK(sq.nearest_on_positive_axis);
    CHECK(sq.contains_unit_disc);
    CHECK(sq.T_exact == Rational(2));

    const ValidationReport n = validate_domain(notched());
    CHECK(n.conditions_hold());
    CHECK(n.T_exact == Rational(1));

    // Shifted square: nearest point is on the imaginary axis.
    const DomainSpec tall{{P(3, -1), P(3, 4), P(-3, 4), P(-3, -1)}, false, std::nullopt};
    const ValidationReport t = validate_domain(tall);
    CHECK_FALSE(t.symmetric);
    CHECK_FALSE(t.nearest_on_positive_axis);

    // Irrational distance: only an enclosure.
    const DomainSpec diamond{{P(1, -1), P(1, 1), P(-1, 1), P(-1, -1)}, true, std::nullopt};
    const DomainSpec rot{{P(2, 0), P(0, 2), P(-2, 0), P(0, -2)}, true, std::nullopt};
    const ValidationReport r = validate_domain(rot);
    CHECK_FALSE(r.T_exact);
    CHECK(r.T_lower * r.T_lower <= 2);
    CHECK(r.T_upper * r.T_upper >= 2);
    CHECK_FALSE(r.nearest_on_positive_axis);
    CHECK(validate_domain(diamond).contains_unit_disc);

    // A supplied T that disagrees with the geometry.
    DomainSpec wrong = square(2, true);
    wrong.T = Rational(3);
    CHECK_FALSE(validate_domain(wrong).nearest_on_positive_axis);
  }

  TEST_CASE("dyadic densification") {
    const auto pts = densify_boundary(square(2, false), 4);
    REQUIRE(pts.size() == 4);
    CHECK(pts[0] == P(2, 0));
    CHECK(pts[1] == P(0, 2));
    CHECK(pts[2] == P(-2, 0));
    CHECK(pts[3] == P(0, -2));
    const auto next = densify_boundary(square(2, false), 8);
    CHECK(next[4] == P(2, -1));
    const auto sym = densify_boundary(square(2, true), 40);
    for (std::size_t i = 0; i < sym.size(); ++i) {
      if (!sym[i].is_real()) {
        REQUIRE(i + 1 < sym.size());
        CHECK(sym[i].im > 0);
        CHECK(sym[i + 1] == sym[i].conj());
        ++i;
      }
    }
  }

  TEST_CASE("pole sums") {
    const PoleSum ps = build_pole_sum(square(2, true), 32);
    CHECK(ps.weight_sum() < 1);
    for (std::size_t i = 0; i < ps.terms.size(); ++i) {
      const auto& t = ps.terms[i];
      CHECK(t.d > 0);
      CHECK(geometry::locate(t.anchor, square(2, true).vertices) == geometry::Location::inside);
      CHECK(geometry::locate(t.lambda, square(2, true).vertices) == geometry::Location::boundary);
      CHECK((t.anchor - t.zeta).norm2() * 4 * t.n * t.n < 1);
      CHECK((t.zeta - t.lambda).norm2() * t.n * t.n < 1);
    }
    // The unit disc must fit inside.
    CHECK_NOTHROW(build_pole_sum(square(1, true), 4));  // touches the circle, still contains the disc
    const DomainSpec small{{P(1, 0), P(0, 1), P(-1, 0), P(0, -1)}, true, std::nullopt};
    CHECK(code_of([&] { build_pole_sum(small, 4); }) == ErrorCode::domain_invalid);
  }

  TEST_CASE("Taylor coefficients match the direct sum") {
    const PoleSum ps = build_pole_sum(square(2, true), 12);
    const TaylorCertificate cert = taylor_coeffs(ps, 20);
    CHECK(cert.real);
    CHECK(cert.bound_holds);
    CHECK(cert.bound == ps.weight_sum());
    for (std::size_t n = 0; n <= 20; n += 5) {
      ComplexRational direct;
      for (const auto& t : ps.terms) direct += t.d * (ComplexRational(1) / pow(t.lambda, n + 1));
      CHECK(cert.b[n] == direct);
    }
    CHECK(taylor_coeffs(ps, 20, 3).b == cert.b);
    const TaylorCertificate lop = taylor_coeffs(build_pole_sum(square(2, false), 3), 4);
    CHECK_FALSE(lop.real);
    CHECK_THROWS_AS(lop.real_coeffs(), Error);
  }

  TEST_CASE("blow-up lower bounds grow toward the boundary") {
    const PoleSum ps = build_pole_sum(square(2, true), 16);
    std::vector<Rational> alphas;
    for (int j = 1; j <= 30; ++j) alphas.push_back(Rational(1) / pow(Rational(2), j));
    const BlowupWitness w = blowup_witness(ps, 0, alphas);
    REQUIRE(w.points.size() == alphas.size());
    CHECK(w.points.back().lower_bound > 1000);
    for (std::size_t i = 1; i < w.points.size(); ++i) CHECK(w.points[i].lower_bound > w.points[i - 1].lower_bound);
    CHECK(code_of([&] { blowup_witness(ps, 0, alphas, 1); }) == ErrorCode::tail_condition_unsatisfiable);
    CHECK_THROWS_AS(blowup_witness(ps, 0, {Rational(0)}), Error);
  }

  TEST_CASE("composition keeps real coefficients and passes order 2") {
    ComposeOptions opts;
    opts.terms = 8;
    const ComposeResult res = compose_pfr_domain(notched(), 2, 60, opts);
    CHECK(res.T == 1);
    CHECK(res.taylor.real);
    CHECK(res.coeffs.window() == 60);
    CHECK(res.plan.C == res.poles.weight_sum() + 1);
    // Shifted square fails condition (C).
    const DomainSpec tall{{P(3, -1), P(3, 4), P(-3, 4), P(-3, -1)}, false, std::nullopt};
    CHECK(code_of([&] { compose_pfr_domain(tall, 2, 20, opts); }) == ErrorCode::domain_invalid);
  }
}
