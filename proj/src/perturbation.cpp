#include "pfforge/perturbation.hpp"

#include <algorithm>

#include "pfforge/determinant.hpp"
#include "pfforge/error.hpp"
#include "pfforge/parallel.hpp"
#include "pfforge/series.hpp"

namespace pfforge {

std::string to_string(PlanMode mode) {
  return mode == PlanMode::certified ? "certified" : "windowed";
}

PlanMode parse_plan_mode(const std::string& text) {
  if (text == "certified") return PlanMode::certified;
  if (text == "windowed") return PlanMode::windowed;
  throw Error(ErrorCode::parse_error, "unknown plan mode '" + text + "'");
}

const PlanEntry& PerturbationPlan::entry(std::size_t n, std::size_t p) const {
  for (const auto& e : entries) {
    if (e.n == n && e.p == p) return e;
  }
  throw Error(ErrorCode::parameter_out_of_range,
              "plan has no entry for n=" + std::to_string(n) + ", p=" + std::to_string(p));
}

namespace {

constexpr Index kFirstThreshold = 64;
constexpr Index kMaxThreshold = Index{1} << 20;

Integer ipow(const Integer& base, std::size_t e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

struct ScanMax {
  Rational value = -1;
  Index k = -1;
};

ScanMax scan_ratio(std::size_t r, std::size_t p, std::size_t n, const Rational& B, Index begin,
                   Index end, std::size_t jobs) {
  const std::size_t count = static_cast<std::size_t>(std::max<Index>(0, end - begin));
  std::vector<ScanMax> partial(std::max<std::size_t>(1, std::min(jobs, count)));
  parallel_slices(count, jobs, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    ScanMax best;
    for (std::size_t i = lo; i < hi; ++i) {
      const Index k = begin + static_cast<Index>(i);
      Rational v = perturbation_ratio(r, p, n, k, B);
      if (best.k < 0 || v > best.value) {
        best.value = std::move(v);
        best.k = k;
      }
    }
    partial[w] = std::move(best);
  });
  ScanMax out;
  for (auto& s : partial) {
    if (s.k < 0) continue;
    if (out.k < 0 || s.value > out.value) out = std::move(s);
  }
  return out;
}

void merge(ScanMax& into, ScanMax&& other) {
  if (other.k < 0) return;
  if (into.k < 0 || other.value > into.value) into = std::move(other);
}

// Value at k = threshold of the non-increasing majorant of ratio(k), k >= threshold.
TailRecord tail_bound(std::size_t r, std::size_t p, std::size_t n, const Rational& B,
                      const Rational& M, Index threshold) {
  const std::size_t r2 = r * r;
  const std::size_t R = r2 + p;
  const Integer x = static_cast<long>(threshold + 1);
  TailRecord rec;
  rec.threshold = threshold;
  rec.a_hat = 1;
  for (std::size_t s = 1; s + 1 <= R; ++s) {
    rec.a_hat *= Rational(1) + make_rational(static_cast<long>(r + s - 2), x);
  }
  rec.a_hat /= Rational(factorial(r2 - 1));
  const std::size_t E = n * (R - n);
  Rational sum = 0;
  for (std::size_t l = 1; l <= n; ++l) {
    const std::size_t e = p * l + (R - 1) * (n - l);
    sum += pow(rec.a_hat, n - l) / Rational(ipow(x, E - e));
  }
  rec.tail_bound = 2 * B / M * sum;
  return rec;
}

}  // namespace

Rational perturbation_ratio(std::size_t r, std::size_t p, std::size_t n, Index k,
                            const Rational& B) {
  const Integer a = derived_inv_pow_coeff(r, p, k + static_cast<Index>(r) - 1);
  const Integer x = static_cast<long>(k + 1);
  Integer sum = 0;
  for (std::size_t l = 1; l <= n; ++l) sum += ipow(x, p * l) * ipow(a, n - l);
  return 2 * B * Rational(sum) / s0_closed_form(r, p, n, k);
}

Rational s0_lower_constant(std::size_t r, std::size_t p, std::size_t n) {
  const std::size_t r2 = r * r;
  const std::size_t R = r2 + p;
  Integer lead = 1;
  for (std::size_t j = 0; j < p; ++j) lead *= static_cast<unsigned long>(r2 + j);
  Integer num = ipow(lead, n);
  Integer den = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    num *= factorial(i - 1);
    den *= factorial(R - i);
  }
  return make_rational(num, den);
}

PerturbationPlan epsilon_bound(std::size_t r, std::size_t alpha, const Rational& C, PlanMode mode,
                               Index K, std::size_t jobs) {
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "r must be >= 1");
  if (C <= 0) throw Error(ErrorCode::infeasible, "coefficient bound C must be positive");
  if (mode == PlanMode::windowed && K < 0) {
    throw Error(ErrorCode::parameter_out_of_range, "windowed mode needs K >= 0");
  }

  PerturbationPlan plan;
  plan.r = r;
  plan.alpha = alpha;
  plan.C = C;
  plan.mode = mode;
  Rational max_cp = 1;
  for (std::size_t p = 0; p <= alpha; ++p) {
    plan.C_p.push_back(C * Rational(ipow(Integer(static_cast<unsigned long>(r + p)), p)));
    max_cp = std::max(max_cp, plan.C_p.back());
  }
  plan.B = Rational(ipow(2, r) * factorial(r)) * pow(max_cp, r);

  Rational min_eps;
  bool have_min = false;
  Index k_checked = mode == PlanMode::windowed ? K : 0;
  for (std::size_t n = 1; n <= r; ++n) {
    for (std::size_t p = 0; p <= alpha; ++p) {
      PlanEntry e;
      e.n = n;
      e.p = p;
      e.M = s0_lower_constant(r, p, n);
      if (mode == PlanMode::windowed) {
        ScanMax best = scan_ratio(r, p, n, plan.B, 0, K + 1, jobs);
        e.sup_ratio = best.value;
        e.argmax_k = best.k;
      } else {
        ScanMax best;
        Index scanned = 0;
        Index threshold = kFirstThreshold;
        TailRecord rec;
        for (;;) {
          merge(best, scan_ratio(r, p, n, plan.B, scanned, threshold, jobs));
          scanned = threshold;
          rec = tail_bound(r, p, n, plan.B, e.M, threshold);
          // r = 1 has a flat majorant; doubling the threshold cannot tighten it.
          if (rec.tail_bound <= best.value || r == 1 || threshold >= kMaxThreshold) break;
          threshold *= 2;
        }
        rec.scan_max = best.value;
        e.sup_ratio = std::max(best.value, rec.tail_bound);
        e.argmax_k = best.k;
        e.tail = rec;
        k_checked = std::max(k_checked, threshold - 1);
      }
      e.epsilon_np = 1 / e.sup_ratio;
      if (!have_min || e.epsilon_np < min_eps) {
        min_eps = e.epsilon_np;
        have_min = true;
      }
      plan.entries.push_back(std::move(e));
    }
  }
  plan.K_checked = k_checked;
  plan.epsilon = std::min(Rational(1, 2), Rational(min_eps / 2));
  return plan;
}

MarginReport check_perturbation_margin(const CoeffSeq& g, const PerturbationPlan& plan, Index K,
                                       std::size_t jobs) {
  const std::size_t r = plan.r;
  const Index top = K + static_cast<Index>(r) - 1;
  const Index needed = top + static_cast<Index>(plan.alpha);
  if (needed > g.window()) {
    throw Error(ErrorCode::window_mismatch,
                "margin check needs g up to " + std::to_string(needed) + ", window is " +
                    std::to_string(g.window()));
  }
  const CoeffSeq f = build_perturbed(g, r, plan.epsilon, needed);
  const std::size_t count = static_cast<std::size_t>(K + 1);

  MarginReport report;
  bool have_min = false;
  for (std::size_t p = 0; p <= plan.alpha; ++p) {
    const CoeffSeq fp = derived_series_coeffs(f, p, top);
    const IntegerWindow ints = integerize(fp, top);
    for (std::size_t n = 1; n <= r; ++n) {
      const Integer scale = ipow(ints.denom, n);
      std::vector<Rational> ratios(count);
      std::vector<char> ok(count, 1);
      parallel_slices(count, jobs, [&](std::size_t lo, std::size_t hi, std::size_t) {
        std::vector<Integer> scratch(n * n);
        for (std::size_t k = lo; k < hi; ++k) {
          for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
              const Index idx = static_cast<Index>(k + b) - static_cast<Index>(a);
              scratch[a * n + b] = idx < 0 ? Integer(0) : ints.values[static_cast<std::size_t>(idx)];
            }
          }
          const Rational minor = make_rational(bareiss_determinant(scratch, n), scale);
          const Rational s0 = s0_closed_form(r, p, n, static_cast<Index>(k));
          ratios[k] = minor / s0;
          ok[k] = 2 * minor > s0 ? 1 : 0;
        }
      });
      for (std::size_t k = 0; k < count; ++k) {
        ++report.checked;
        if (!have_min || ratios[k] < report.min_ratio) {
          report.min_ratio = ratios[k];
          have_min = true;
        }
        if (!ok[k] && report.holds) {
          report.holds = false;
          report.fail_p = p;
          report.fail_n = n;
          report.fail_k = static_cast<Index>(k);
        }
      }
    }
  }
  return report;
}

}  // namespace pfforge
