#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pfforge/rational.hpp"

namespace pfforge {

using Index = std::int64_t;

/// Truncated coefficient sequence c_0..c_W of a power series.
///
/// Reads below index 0 return 0; reads above W are an error, never a silent
/// zero, since a fabricated zero changes minor signs.
class CoeffSeq {
 public:
  CoeffSeq() = delete;
  explicit CoeffSeq(std::vector<Rational> coeffs, bool require_normalized = false);

  /// Value at k: 0 for k < 0, throws index_out_of_window for k > window().
  const Rational& at(Index k) const;
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }

  Index window() const { return static_cast<Index>(coeffs_.size()) - 1; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Copy holding c_0..c_w.
  CoeffSeq truncated(Index w) const;

  friend bool operator==(const CoeffSeq& a, const CoeffSeq& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<Rational> coeffs_;
};

/// Entry (i, j) of the upper-triangular Toeplitz matrix: c_{j-i}.
Rational toeplitz_entry(const CoeffSeq& c, Index i, Index j);

/// c'_k = c_k * s^k. For s > 0 every minor of order n is multiplied by a
/// positive power of s, so signs (and PF verdicts) are unchanged.
CoeffSeq scale_sequence(const CoeffSeq& c, const Rational& s);

/// c_0..c_upto written over one common denominator: c_k = values[k] / denom.
struct IntegerWindow {
  std::vector<Integer> values;
  Integer denom;
};
IntegerWindow integerize(const CoeffSeq& c, Index upto);

/// Coefficient source consumed in order k = 0, 1, 2, ... Used where storing
/// every exact coefficient is too large (long windows with growing denominators).
using CoeffGenerator = std::function<Rational(Index k)>;

}  // namespace pfforge
