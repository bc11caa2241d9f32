#include "pfforge/minors.hpp"

#include <numeric>

#include "pfforge/determinant.hpp"
#include "pfforge/error.hpp"

namespace pfforge {

void MinorSpec::validate() const {
  if (rows.empty() || rows.size() != cols.size()) {
    throw Error(ErrorCode::parameter_out_of_range, "minor needs equally many rows and columns");
  }
  for (const auto* set : {&rows, &cols}) {
    for (std::size_t a = 0; a < set->size(); ++a) {
      if ((*set)[a] < 0 || (a > 0 && (*set)[a] <= (*set)[a - 1])) {
        throw Error(ErrorCode::parameter_out_of_range,
                    "minor indices must be non-negative and strictly increasing");
      }
    }
  }
}

MinorSpec contiguous_spec(Index k, std::size_t n) {
  MinorSpec spec;
  spec.rows.resize(n);
  spec.cols.resize(n);
  std::iota(spec.rows.begin(), spec.rows.end(), Index{0});
  std::iota(spec.cols.begin(), spec.cols.end(), k);
  return spec;
}

Rational minor_det(const CoeffSeq& c, const MinorSpec& spec) {
  spec.validate();
  const std::size_t n = spec.order();
  std::vector<Rational> m;
  m.reserve(n * n);
  for (Index row : spec.rows) {
    for (Index col : spec.cols) m.push_back(toeplitz_entry(c, row, col));
  }
  return determinant(m, n);
}

Integer count_minors(Index window, std::size_t max_order) {
  Integer total = 0;
  const unsigned long size = static_cast<unsigned long>(window + 1);
  for (std::size_t n = 1; n <= max_order; ++n) {
    Integer binom;
    mpz_bin_uiui(binom.get_mpz_t(), size, static_cast<unsigned long>(n));
    total += binom * binom;
  }
  return total;
}

bool next_combination(std::vector<Index>& combo, Index limit) {
  const Index n = static_cast<Index>(combo.size());
  Index i = n - 1;
  while (i >= 0 && combo[static_cast<std::size_t>(i)] == limit - (n - 1 - i)) --i;
  if (i < 0) return false;
  ++combo[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < n; ++j) {
    combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
  }
  return true;
}

MinorEnumerator::MinorEnumerator(Index window, std::size_t max_order)
    : window_(window), max_order_(max_order) {
  if (max_order == 0) throw Error(ErrorCode::parameter_out_of_range, "max_order must be >= 1");
  if (window < static_cast<Index>(max_order) - 1) {
    throw Error(ErrorCode::parameter_out_of_range, "window too small for max_order");
  }
}

std::optional<MinorSpec> MinorEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    rows_ = {0};
    cols_ = {0};
    return MinorSpec{rows_, cols_};
  }
  if (!next_combination(cols_, window_)) {
    if (!next_combination(rows_, window_)) {
      ++order_;
      if (order_ > max_order_) {
        done_ = true;
        return std::nullopt;
      }
      rows_.resize(order_);
      std::iota(rows_.begin(), rows_.end(), Index{0});
    }
    cols_.resize(order_);
    std::iota(cols_.begin(), cols_.end(), Index{0});
  }
  return MinorSpec{rows_, cols_};
}

}  // namespace pfforge
