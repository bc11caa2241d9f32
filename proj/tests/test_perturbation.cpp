#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "pfforge/error.hpp"
#include "pfforge/perturbation.hpp"
#include "pfforge/pf_check.hpp"
#include "pfforge/series.hpp"

using namespace pfforge;

namespace {

// ratio(k) from the definition, with S_0 by cofactor expansion.
Rational brute_ratio(std::size_t r, std::size_t p, std::size_t n, Index k, const Rational& B) {
  auto a = [&](Index m) { return Rational(derived_inv_pow_coeff(r, p, m)); };
  const Rational s0 = oracle::contiguous_minor(a, k, n);
  const Rational top = a(k + static_cast<Index>(r) - 1);
  Rational sum = 0;
  for (std::size_t l = 1; l <= n; ++l) {
    sum += pow(Rational(k + 1), p * l) * pow(top, n - l);
  }
  return 2 * B * sum / s0;
}

}  // namespace

TEST_SUITE("perturbation") {
  TEST_CASE("plan constants") {
    const PerturbationPlan plan = epsilon_bound(2, 1, Rational(3), PlanMode::windowed, 50);
    CHECK(plan.C_p.size() == 2);
    CHECK(plan.C_p[0] == 3);
    CHECK(plan.C_p[1] == 9);
    CHECK(plan.B == Rational(4 * 2 * 81));
    CHECK(plan.entries.size() == 4);
    CHECK(plan.entry(2, 1).n == 2);
    CHECK(plan.epsilon <= Rational(1, 2));
    CHECK(plan.epsilon > 0);
    for (const auto& e : plan.entries) {
      CHECK(e.epsilon_np * e.sup_ratio == 1);
      CHECK(plan.epsilon <= e.epsilon_np / 2);
    }
    CHECK_THROWS_AS(epsilon_bound(2, 0, Rational(0), PlanMode::windowed, 10), Error);
  }

  TEST_CASE("ratio formula matches the definition") {
    const Rational B(17);
    for (std::size_t r = 1; r <= 3; ++r) {
      for (std::size_t p = 0; p <= 1; ++p) {
        for (std::size_t n = 1; n <= r; ++n) {
          for (Index k : {0, 1, 5, 40}) {
            CHECK(perturbation_ratio(r, p, n, k, B) == brute_ratio(r, p, n, k, B));
          }
        }
      }
    }
  }

  TEST_CASE("S_0 lower constant") {
    for (std::size_t r = 1; r <= 3; ++r) {
      for (std::size_t p = 0; p <= 2; ++p) {
        for (std::size_t n = 1; n <= r; ++n) {
          const Rational M = s0_lower_constant(r, p, n);
          const std::uint64_t e = n * (r * r + p - n);
          for (Index k = 0; k <= 60; k += 7) {
            CHECK(s0_closed_form(r, p, n, k) >= M * pow(Rational(k + 1), e));
          }
        }
      }
    }
  }

  TEST_CASE("certified sup dominates brute-force ratios") {
    for (std::size_t r : {1u, 2u, 3u}) {
      const PerturbationPlan plan = epsilon_bound(r, 1, Rational(3), PlanMode::certified, 0);
      const Index limit = r == 3 ? 2000 : 10000;
      for (const auto& e : plan.entries) {
        REQUIRE(e.tail);
        Rational mx = 0;
        for (Index k = 0; k <= limit; k += (k < 200 ? 1 : 37)) {
          mx = std::max(mx, perturbation_ratio(r, e.p, e.n, k, plan.B));
        }
        CHECK(mx <= e.sup_ratio);
        CHECK(e.tail->tail_bound <= e.sup_ratio);
      }
    }
  }

  TEST_CASE("plans do not depend on the worker count") {
    const PerturbationPlan one = epsilon_bound(3, 1, Rational(3), PlanMode::windowed, 300, 1);
    CHECK(epsilon_bound(3, 1, Rational(3), PlanMode::windowed, 300, 4) == one);
    const PerturbationPlan c1 = epsilon_bound(2, 0, Rational(5, 2), PlanMode::certified, 0, 1);
    CHECK(epsilon_bound(2, 0, Rational(5, 2), PlanMode::certified, 0, 3) == c1);
  }

  TEST_CASE("random bounded perturbations stay strictly PF_r") {
    std::mt19937_64 rng(2024);
    for (std::size_t r : {2u, 3u}) {
      const Rational C(2);
      const PerturbationPlan plan = epsilon_bound(r, 0, C, PlanMode::certified, 0);
      for (int trial = 0; trial < 4; ++trial) {
        const Index W = 160;
        std::vector<Rational> g;
        for (Index k = 0; k <= W; ++k) g.push_back(oracle::random_rational(rng, 1, false) * Rational(11, 12) * 2);
        const CoeffSeq gs(std::move(g));
        const CoeffSeq f = build_perturbed(gs, r, plan.epsilon, W);
        CHECK(check_contiguous(f, r, W - static_cast<Index>(r) + 1).status == PFStatus::pass_strict);
        const MarginReport m = check_perturbation_margin(gs, plan, 100);
        CHECK(m.holds);
        CHECK(m.min_ratio > Rational(1, 2));
      }
    }
  }

  TEST_CASE("margin check reports its first failure") {
    // A huge epsilon breaks the margin.
    PerturbationPlan plan = epsilon_bound(2, 0, Rational(3), PlanMode::windowed, 20);
    plan.epsilon = 50;
    const CoeffSeq g = lacunary_h(30);
    const MarginReport m = check_perturbation_margin(g, plan, 20);
    CHECK_FALSE(m.holds);
    CHECK(m.fail_k.has_value());
    CHECK_THROWS_AS(check_perturbation_margin(lacunary_h(10), plan, 20), Error);
  }

  TEST_CASE("mode names") {
    CHECK(parse_plan_mode("certified") == PlanMode::certified);
    CHECK(parse_plan_mode(to_string(PlanMode::windowed)) == PlanMode::windowed);
    CHECK_THROWS_AS(parse_plan_mode("loose"), Error);
  }
}
