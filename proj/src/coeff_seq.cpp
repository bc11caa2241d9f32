#include "pfforge/coeff_seq.hpp"

#include <string>

#include "pfforge/error.hpp"

namespace pfforge {

namespace {
const Rational kZero(0);
}

CoeffSeq::CoeffSeq(std::vector<Rational> coeffs, bool require_normalized)
    : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) {
    throw Error(ErrorCode::parameter_out_of_range, "coefficient sequence must be nonempty");
  }
  if (require_normalized && coeffs_.front() != 1) {
    throw Error(ErrorCode::parameter_out_of_range, "sequence is not normalized (c_0 != 1)");
  }
}

const Rational& CoeffSeq::at(Index k) const {
  if (k < 0) return kZero;
  if (k > window()) {
    throw Error(ErrorCode::index_out_of_window,
                "coefficient " + std::to_string(k) + " requested from window " +
                    std::to_string(window()));
  }
  return coeffs_[static_cast<std::size_t>(k)];
}

CoeffSeq CoeffSeq::truncated(Index w) const {
  if (w < 0 || w > window()) {
    throw Error(ErrorCode::index_out_of_window,
                "cannot truncate window " + std::to_string(window()) + " to " + std::to_string(w));
  }
  return CoeffSeq(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + w + 1));
}

Rational toeplitz_entry(const CoeffSeq& c, Index i, Index j) { return c.at(j - i); }

CoeffSeq scale_sequence(const CoeffSeq& c, const Rational& s) {
  if (s <= 0) throw Error(ErrorCode::parameter_out_of_range, "scale factor must be positive");
  std::vector<Rational> out;
  out.reserve(c.size());
  Rational power(1);
  for (const auto& value : c.coeffs()) {
    out.push_back(value * power);
    power *= s;
  }
  return CoeffSeq(std::move(out));
}

IntegerWindow integerize(const CoeffSeq& c, Index upto) {
  if (upto > c.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "integerize up to " + std::to_string(upto) + " exceeds window " +
                    std::to_string(c.window()));
  }
  IntegerWindow out;
  out.denom = 1;
  for (Index k = 0; k <= upto; ++k) out.denom = lcm(out.denom, c[k].get_den());
  out.values.reserve(static_cast<std::size_t>(upto + 1));
  for (Index k = 0; k <= upto; ++k) {
    out.values.push_back(c[k].get_num() * (out.denom / c[k].get_den()));
  }
  return out;
}

}  // namespace pfforge
