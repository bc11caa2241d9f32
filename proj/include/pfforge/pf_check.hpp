#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pfforge/coeff_seq.hpp"
#include "pfforge/minors.hpp"

namespace pfforge {

enum class PFStatus { pass_nonneg, pass_strict, fail };

std::string to_string(PFStatus status);
PFStatus parse_pf_status(const std::string& text);

struct MinorWitness {
  MinorSpec spec;
  Rational det;

  friend bool operator==(const MinorWitness&, const MinorWitness&) = default;
};

/// Outcome of a windowed PF_r check. `witness` is present iff status == fail;
/// `strictness_gap` is the smallest contiguous minor seen (contiguous checks only).
struct PFVerdict {
  PFStatus status = PFStatus::fail;
  std::size_t order_checked = 0;
  Index window = 0;
  std::optional<MinorWitness> witness;
  std::optional<Rational> strictness_gap;

  bool passed() const { return status != PFStatus::fail; }
  friend bool operator==(const PFVerdict&, const PFVerdict&) = default;
};

inline constexpr std::uint64_t kDefaultMinorBudget = 10'000'000;

struct ScanOptions {
  std::uint64_t budget = kDefaultMinorBudget;
  std::size_t jobs = 1;
};

/// Definition check: every minor of order <= r with row and column indices in
/// {0..window} is non-negative. The witness is the first negative minor in
/// MinorEnumerator order. Throws budget_exceeded when the minor count exceeds
/// options.budget.
PFVerdict check_all_minors(const CoeffSeq& c, std::size_t r, Index window,
                           const ScanOptions& options = {});

/// Strict contiguous criterion: det ||c_{k+j-i}||_{i,j=1..n} > 0 for
/// 0 <= k <= window and 1 <= n <= r, scanned in (n, k) order. Needs
/// window + r - 1 <= c.window(). On failure the scan stops after the failing
/// order; strictness_gap is then the minimum over the values evaluated so far.
PFVerdict check_contiguous(const CoeffSeq& c, std::size_t r, Index window, std::size_t jobs = 1);

/// Finite-window evidence for the convergence hypothesis of the contiguous
/// criterion: the ratios c_{k+1}/c_k over the indices the check touched.
struct RatioEvidence {
  std::vector<Index> zero_indices;  ///< k with c_k == 0, ratio undefined there
  std::optional<Rational> max_ratio;
  std::optional<Rational> last_ratio;
  bool non_increasing = true;
  bool bounded = true;  ///< every ratio on the window is defined
};

struct SchoenbergCertificate {
  PFVerdict verdict;
  std::optional<RatioEvidence> ratios;
  bool certified = false;
  std::string label;
};

inline constexpr const char* kConditionalLabel = "certificate modulo convergence hypothesis";

SchoenbergCertificate schoenberg_certificate(const CoeffSeq& c, std::size_t r, Index window,
                                             bool ratio_evidence, std::size_t jobs = 1);

}  // namespace pfforge
