#include "pfforge/pf_check.hpp"

#include <atomic>
#include <limits>
#include <numeric>

#include "pfforge/determinant.hpp"
#include "pfforge/error.hpp"
#include "pfforge/parallel.hpp"

namespace pfforge {

std::string to_string(PFStatus status) {
  switch (status) {
    case PFStatus::pass_nonneg: return "pass_nonneg";
    case PFStatus::pass_strict: return "pass_strict";
    case PFStatus::fail: return "fail";
  }
  return "fail";
}

PFStatus parse_pf_status(const std::string& text) {
  if (text == "pass_nonneg") return PFStatus::pass_nonneg;
  if (text == "pass_strict") return PFStatus::pass_strict;
  if (text == "fail") return PFStatus::fail;
  throw Error(ErrorCode::parse_error, "unknown verdict status '" + text + "'");
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Toeplitz entries over the integerized window; zero below the diagonal.
class IntToeplitz {
 public:
  explicit IntToeplitz(const std::vector<Integer>& values) : values_(values) {}

  const Integer& operator()(Index i, Index j) const {
    return j < i ? zero_ : values_[static_cast<std::size_t>(j - i)];
  }

 private:
  const std::vector<Integer>& values_;
  Integer zero_ = 0;
};

std::vector<Index> all_combinations(Index window, std::size_t n) {
  std::vector<Index> flat;
  std::vector<Index> combo(n);
  std::iota(combo.begin(), combo.end(), Index{0});
  do {
    flat.insert(flat.end(), combo.begin(), combo.end());
  } while (next_combination(combo, window));
  return flat;
}

struct ScanHit {
  std::size_t row_index = kNone;
  std::size_t col_index = kNone;
  Integer det;
};

// First negative minor of order n among row combos [begin, end), scanning
// columns in lexicographic order. Stops early once another worker has found a
// hit at a smaller row index.
ScanHit scan_order(const IntToeplitz& entry, const std::vector<Index>& combos, std::size_t n,
                   std::size_t begin, std::size_t end, std::atomic<std::size_t>& best_row) {
  const std::size_t num_combos = combos.size() / n;
  std::vector<Integer> scratch(n * n);
  Integer det;
  ScanHit hit;
  for (std::size_t ri = begin; ri < end; ++ri) {
    if (ri > best_row.load(std::memory_order_relaxed)) break;
    const Index* rows = &combos[ri * n];
    for (std::size_t ci = 0; ci < num_combos; ++ci) {
      const Index* cols = &combos[ci * n];
      if (n == 1) {
        det = entry(rows[0], cols[0]);
      } else if (n == 2) {
        mpz_mul(det.get_mpz_t(), entry(rows[0], cols[0]).get_mpz_t(),
                entry(rows[1], cols[1]).get_mpz_t());
        mpz_submul(det.get_mpz_t(), entry(rows[0], cols[1]).get_mpz_t(),
                   entry(rows[1], cols[0]).get_mpz_t());
      } else {
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) scratch[a * n + b] = entry(rows[a], cols[b]);
        }
        det = bareiss_determinant(scratch, n);
      }
      if (sgn(det) < 0) {
        hit.row_index = ri;
        hit.col_index = ci;
        hit.det = det;
        std::size_t expected = best_row.load();
        while (ri < expected && !best_row.compare_exchange_weak(expected, ri)) {
        }
        return hit;
      }
    }
  }
  return hit;
}

MinorSpec spec_from(const std::vector<Index>& combos, std::size_t n, std::size_t ri,
                    std::size_t ci) {
  MinorSpec spec;
  spec.rows.assign(combos.begin() + static_cast<std::ptrdiff_t>(ri * n),
                   combos.begin() + static_cast<std::ptrdiff_t>((ri + 1) * n));
  spec.cols.assign(combos.begin() + static_cast<std::ptrdiff_t>(ci * n),
                   combos.begin() + static_cast<std::ptrdiff_t>((ci + 1) * n));
  return spec;
}

Integer pow_int(const Integer& base, std::size_t e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

}  // namespace

PFVerdict check_all_minors(const CoeffSeq& c, std::size_t r, Index window,
                           const ScanOptions& options) {
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "order r must be >= 1");
  if (window < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
  if (window > c.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "window " + std::to_string(window) + " exceeds sequence window " +
                    std::to_string(c.window()));
  }
  const std::size_t max_order = std::min<std::size_t>(r, static_cast<std::size_t>(window + 1));
  const Integer total = count_minors(window, max_order);
  if (total > Integer(std::to_string(options.budget))) {
    throw Error(ErrorCode::budget_exceeded,
                total.get_str() + " minors exceed the budget of " + std::to_string(options.budget));
  }

  const IntegerWindow ints = integerize(c, window);
  const IntToeplitz entry(ints.values);

  PFVerdict verdict;
  verdict.order_checked = r;
  verdict.window = window;
  for (std::size_t n = 1; n <= max_order; ++n) {
    const std::vector<Index> combos = all_combinations(window, n);
    const std::size_t num_combos = combos.size() / n;
    const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
    std::vector<ScanHit> hits(std::min(jobs, num_combos));
    std::atomic<std::size_t> best_row{kNone};
    parallel_slices(num_combos, jobs, [&](std::size_t begin, std::size_t end, std::size_t w) {
      hits[w] = scan_order(entry, combos, n, begin, end, best_row);
    });
    // Slices are ordered, so the first slice with a hit holds the global first.
    for (const auto& hit : hits) {
      if (hit.row_index == kNone) continue;
      verdict.status = PFStatus::fail;
      verdict.witness = MinorWitness{spec_from(combos, n, hit.row_index, hit.col_index),
                                     make_rational(hit.det, pow_int(ints.denom, n))};
      return verdict;
    }
  }
  verdict.status = PFStatus::pass_nonneg;
  return verdict;
}

PFVerdict check_contiguous(const CoeffSeq& c, std::size_t r, Index window, std::size_t jobs) {
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "order r must be >= 1");
  if (window < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
  const Index needed = window + static_cast<Index>(r) - 1;
  if (needed > c.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "contiguous check needs coefficients up to " + std::to_string(needed) +
                    " but the window is " + std::to_string(c.window()));
  }
  const IntegerWindow ints = integerize(c, needed);
  const IntToeplitz entry(ints.values);
  const std::size_t count = static_cast<std::size_t>(window + 1);

  PFVerdict verdict;
  verdict.order_checked = r;
  verdict.window = window;
  std::optional<Rational> gap;
  for (std::size_t n = 1; n <= r; ++n) {
    std::vector<Integer> dets(count);
    parallel_slices(count, jobs, [&](std::size_t begin, std::size_t end, std::size_t) {
      std::vector<Integer> scratch(n * n);
      for (std::size_t k = begin; k < end; ++k) {
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            scratch[a * n + b] = entry(static_cast<Index>(a), static_cast<Index>(k + b));
          }
        }
        dets[k] = bareiss_determinant(scratch, n);
      }
    });
    std::size_t first_bad = kNone;
    std::size_t min_k = 0;
    for (std::size_t k = 0; k < count; ++k) {
      if (first_bad == kNone && sgn(dets[k]) <= 0) first_bad = k;
      if (dets[k] < dets[min_k]) min_k = k;
    }
    const Integer scale = pow_int(ints.denom, n);
    Rational order_min = make_rational(dets[min_k], scale);
    if (!gap || order_min < *gap) gap = order_min;
    if (first_bad != kNone) {
      verdict.status = PFStatus::fail;
      verdict.witness = MinorWitness{contiguous_spec(static_cast<Index>(first_bad), n),
                                     make_rational(dets[first_bad], scale)};
      verdict.strictness_gap = gap;
      return verdict;
    }
  }
  verdict.status = PFStatus::pass_strict;
  verdict.strictness_gap = gap;
  return verdict;
}

SchoenbergCertificate schoenberg_certificate(const CoeffSeq& c, std::size_t r, Index window,
                                             bool ratio_evidence, std::size_t jobs) {
  SchoenbergCertificate cert;
  cert.verdict = check_contiguous(c, r, window, jobs);
  if (ratio_evidence) {
    RatioEvidence ev;
    const Index last = window + static_cast<Index>(r) - 1;
    for (Index k = 0; k < last; ++k) {
      if (c[k] == 0) {
        ev.zero_indices.push_back(k);
        continue;
      }
      Rational ratio = c[k + 1] / c[k];
      if (ev.last_ratio && ratio > *ev.last_ratio) ev.non_increasing = false;
      if (!ev.max_ratio || ratio > *ev.max_ratio) ev.max_ratio = ratio;
      ev.last_ratio = std::move(ratio);
    }
    ev.bounded = ev.zero_indices.empty();
    cert.ratios = std::move(ev);
  }
  cert.certified = cert.verdict.status == PFStatus::pass_strict &&
                   (!cert.ratios || cert.ratios->bounded);
  cert.label = cert.certified ? kConditionalLabel : "no certificate";
  return cert;
}

}  // namespace pfforge
