#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfforge/coeff_seq.hpp"

namespace pfforge {

enum class PlanMode { certified, windowed };

std::string to_string(PlanMode mode);
PlanMode parse_plan_mode(const std::string& text);

/// Domination record for k >= threshold in certified mode. For such k every
/// factor (k + j) of a^p_{k+r-1} is at most (k+1)(1 + (j-1)/(threshold+1)),
/// every factor of S_0 is at least (k+1), so
///   ratio(k) <= 2B/M * sum_l a_hat^(n-l) (k+1)^(pl + (r^2+p-1)(n-l) - n(r^2+p-n)),
/// a non-increasing function of k whose value at k = threshold is tail_bound.
struct TailRecord {
  Index threshold = 0;
  Rational a_hat;
  Rational tail_bound;
  Rational scan_max;  ///< max of ratio(k) over 0 <= k < threshold
};

/// Constants for one (n, p) pair.
struct PlanEntry {
  std::size_t n = 0;
  std::size_t p = 0;
  Rational M;            ///< S_0^p(k,n) >= M (k+1)^{n(r^2+p-n)} for all k >= 0
  Rational sup_ratio;    ///< sup over the certified/scanned k of ratio(k)
  Index argmax_k = 0;    ///< first k attaining the scanned maximum
  Rational epsilon_np;   ///< 1 / sup_ratio
  std::optional<TailRecord> tail;

  friend bool operator==(const PlanEntry& a, const PlanEntry& b) {
    auto tail_eq = [](const std::optional<TailRecord>& x, const std::optional<TailRecord>& y) {
      if (x.has_value() != y.has_value()) return false;
      if (!x) return true;
      return x->threshold == y->threshold && x->a_hat == y->a_hat &&
             x->tail_bound == y->tail_bound && x->scan_max == y->scan_max;
    };
    return a.n == b.n && a.p == b.p && a.M == b.M && a.sup_ratio == b.sup_ratio &&
           a.argmax_k == b.argmax_k && a.epsilon_np == b.epsilon_np && tail_eq(a.tail, b.tail);
  }
};

/// Every constant of the epsilon construction for f_eps = 1/(1-z)^{r^2} + eps g
/// and its derivatives up to order alpha, given |g_k| < C.
struct PerturbationPlan {
  std::size_t r = 1;
  std::size_t alpha = 0;
  Rational C;
  std::vector<Rational> C_p;  ///< C (r+p)^p, bound |b^p_m| <= C_p (k+1)^p on a window at k
  Rational B;                 ///< 2^r r! max_p max(1, C_p)^r
  std::vector<PlanEntry> entries;  ///< n-major, p-minor
  Rational epsilon;
  PlanMode mode = PlanMode::windowed;
  Index K_checked = 0;

  const PlanEntry& entry(std::size_t n, std::size_t p) const;
  friend bool operator==(const PerturbationPlan&, const PerturbationPlan&) = default;
};

/// ratio(k) = B sum_{l=1..n} (k+1)^{pl} (a^p_{k+r-1})^{n-l} / (S_0^p(k,n) / 2).
/// Any eps < 1/ratio(k) makes eps * B * sum(...) < S_0/2 at that k.
Rational perturbation_ratio(std::size_t r, std::size_t p, std::size_t n, Index k,
                            const Rational& B);

/// Lower-bound constant M with S_0^p(k,n) >= M (k+1)^{n(r^2+p-n)}.
Rational s0_lower_constant(std::size_t r, std::size_t p, std::size_t n);

/// Builds the plan. Windowed mode bounds ratio(k) for k <= K; certified mode
/// bounds it for every k >= 0 through the TailRecord argument. The final
/// epsilon is min(1/2, min_np epsilon_np / 2). Throws infeasible for C <= 0.
PerturbationPlan epsilon_bound(std::size_t r, std::size_t alpha, const Rational& C, PlanMode mode,
                               Index K, std::size_t jobs = 1);

/// Result of checking det ||c^p_{k+j-i}|| > S_0^p(k,n)/2 for f_eps and its
/// derivatives, k = 0..K, n = 1..r, p = 0..alpha.
struct MarginReport {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<std::size_t> fail_p;
  std::optional<std::size_t> fail_n;
  std::optional<Index> fail_k;
  Rational min_ratio;  ///< min over checked (k,n,p) of minor / S_0
};

MarginReport check_perturbation_margin(const CoeffSeq& g, const PerturbationPlan& plan, Index K,
                                       std::size_t jobs = 1);

}  // namespace pfforge
