#pragma once

#include <optional>
#include <vector>

#include "pfforge/coeff_seq.hpp"

namespace pfforge {

/// Row and column index sets of a square minor of the Toeplitz matrix ||c_{j-i}||.
struct MinorSpec {
  std::vector<Index> rows;
  std::vector<Index> cols;

  std::size_t order() const { return rows.size(); }
  /// Throws parameter_out_of_range unless rows/cols are nonempty, equally
  /// long, non-negative and strictly increasing.
  void validate() const;

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
};

/// Spec of det ||c_{k+j-i}||_{i,j=1..n}: rows 0..n-1 against columns k..k+n-1.
MinorSpec contiguous_spec(Index k, std::size_t n);

/// Exact value of the minor; Bareiss elimination for n >= 3.
Rational minor_det(const CoeffSeq& c, const MinorSpec& spec);

/// Sum over n = 1..max_order of C(window + 1, n)^2.
Integer count_minors(Index window, std::size_t max_order);

/// Advances a strictly increasing index tuple over {0..limit} to its
/// lexicographic successor; false once the last tuple was passed in.
bool next_combination(std::vector<Index>& combo, Index limit);

/// Every minor with rows, cols in {0..window} and order <= max_order, each
/// exactly once, ordered lexicographically by (order, rows, cols).
class MinorEnumerator {
 public:
  MinorEnumerator(Index window, std::size_t max_order);

  std::optional<MinorSpec> next();

 private:
  Index window_;
  std::size_t max_order_;
  std::size_t order_ = 1;
  std::vector<Index> rows_;
  std::vector<Index> cols_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace pfforge
