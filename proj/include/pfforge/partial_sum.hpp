#pragma once

#include <cstddef>
#include <vector>

#include "pfforge/rational.hpp"

namespace pfforge {

/// Exact evaluation of sum_{k} c_k x^k for coefficients pushed in order.
///
/// Blocks are merged like a binary counter (value_left + x^len_left *
/// value_right), so memory stays O(log n) partial results and the big
/// gcd reductions happen O(log n) times per size class instead of once per
/// coefficient.
class PartialSum {
 public:
  explicit PartialSum(Rational x);

  void push(const Rational& coeff);
  std::size_t count() const { return count_; }
  /// Sum of everything pushed so far.
  Rational value() const;

 private:
  struct Block {
    std::size_t len;
    Rational value;  ///< sum_{j < len} c_{start+j} x^j
    Rational xpow;   ///< x^len
  };
  static Block combine(const Block& left, const Block& right);

  Rational x_;
  std::size_t count_ = 0;
  std::vector<Block> stack_;
};

}  // namespace pfforge
