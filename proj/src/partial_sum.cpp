#include "pfforge/partial_sum.hpp"

namespace pfforge {

PartialSum::PartialSum(Rational x) : x_(std::move(x)) {}

PartialSum::Block PartialSum::combine(const Block& left, const Block& right) {
  return {left.len + right.len, left.value + left.xpow * right.value, left.xpow * right.xpow};
}

void PartialSum::push(const Rational& coeff) {
  ++count_;
  stack_.push_back({1, coeff, x_});
  while (stack_.size() >= 2 && stack_[stack_.size() - 2].len == stack_.back().len) {
    Block right = std::move(stack_.back());
    stack_.pop_back();
    stack_.back() = combine(stack_.back(), right);
  }
}

Rational PartialSum::value() const {
  if (stack_.empty()) return 0;
  // Fold from the most recent block backwards: earlier blocks sit at lower powers.
  Block acc = stack_.back();
  for (std::size_t i = stack_.size() - 1; i-- > 0;) acc = combine(stack_[i], acc);
  return acc.value;
}

}  // namespace pfforge
