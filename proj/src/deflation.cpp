#include "pfforge/deflation.hpp"

#include "pfforge/determinant.hpp"
#include "pfforge/error.hpp"
#include "pfforge/partial_sum.hpp"

namespace pfforge {

DeflationResult deflate(const CoeffSeq& c, const Rational& T, std::size_t steps,
                        const DeflateOptions& options) {
  if (T <= 0) throw Error(ErrorCode::nonpositive_T, "deflation radius T must be positive");
  if (steps == 0) throw Error(ErrorCode::parameter_out_of_range, "steps must be >= 1");
  if (!options.allow_nonpositive) {
    for (Index k = 0; k <= c.window(); ++k) {
      if (c[static_cast<std::size_t>(k)] <= 0) {
        throw Error(ErrorCode::nonpositive_input,
                    "coefficient " + std::to_string(k) + " is not positive");
      }
    }
  }
  const Rational inv_T = 1 / T;
  std::vector<Rational> cur = c.coeffs();
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t k = cur.size(); k-- > 1;) cur[k] -= cur[k - 1] * inv_T;
  }
  DeflationResult result{CoeffSeq(std::move(cur)), T, steps, std::nullopt};
  if (options.verdict_order && *options.verdict_order > steps) {
    const std::size_t order = *options.verdict_order - steps;
    const Index window = options.verdict_window.value_or(result.deflated.window());
    result.verdict = check_all_minors(result.deflated, order, window, options.scan);
  }
  return result;
}

RadiusBracket estimate_radius(const CoeffSeq& c) {
  if (c.size() < 2) {
    throw Error(ErrorCode::parameter_out_of_range, "radius estimate needs at least two coefficients");
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] <= 0) {
      throw Error(ErrorCode::zero_coefficient, "coefficient " + std::to_string(k) + " is not positive");
    }
  }
  RadiusBracket out;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    out.ratios.push_back(c[k + 1] / c[k]);
    if (k > 0 && out.ratios[k] > out.ratios[k - 1]) {
      out.non_increasing = false;
      out.violations.push_back(static_cast<Index>(k));
    }
  }
  out.T_lo = 1 / out.ratios.back();
  return out;
}

CoeffSeq mollify(const CoeffSeq& c1, const Rational& epsilon, Index W) {
  if (epsilon < 0) throw Error(ErrorCode::parameter_out_of_range, "epsilon must be >= 0");
  if (W < 0 || W > c1.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "mollify window " + std::to_string(W) + " exceeds " + std::to_string(c1.window()));
  }
  const std::size_t size = static_cast<std::size_t>(W + 1);
  std::vector<Rational> e(size);
  e[0] = 1;
  for (std::size_t m = 1; m < size; ++m) e[m] = e[m - 1] * epsilon / Rational(m);
  std::vector<Rational> a(size, Rational(0));
  for (std::size_t k = 0; k < size; ++k) {
    for (std::size_t m = 0; m <= k; ++m) a[k] += c1[m] * e[k - m];
  }
  return CoeffSeq(std::move(a));
}

namespace {

Rational exp_coeff(const Rational& epsilon, Index m) {
  if (m < 0) return 0;
  return pow(epsilon, static_cast<std::uint64_t>(m)) / Rational(factorial(static_cast<std::uint64_t>(m)));
}

}  // namespace

Rational exp_minor_positive(const Rational& epsilon, Index k, std::size_t n) {
  if (epsilon <= 0) throw Error(ErrorCode::parameter_out_of_range, "epsilon must be > 0");
  if (n == 0 || k < 0) throw Error(ErrorCode::parameter_out_of_range, "need n >= 1 and k >= 0");
  std::vector<Rational> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.push_back(exp_coeff(epsilon, k + static_cast<Index>(j) - static_cast<Index>(i)));
    }
  }
  return determinant(m, n);
}

CauchyBinetReport cauchy_binet_check(const CoeffSeq& c1, const Rational& epsilon, Index k,
                                     std::size_t n) {
  if (n == 0 || k < 0) throw Error(ErrorCode::parameter_out_of_range, "need n >= 1 and k >= 0");
  const Index top = k + static_cast<Index>(n) - 1;
  if (top > c1.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "Cauchy-Binet check needs coefficients up to " + std::to_string(top));
  }
  const CoeffSeq a = mollify(c1, epsilon, top);
  CauchyBinetReport rep;
  rep.lhs = minor_det(a, contiguous_spec(k, n));

  std::vector<Index> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<Index>(i);
  std::vector<Rational> cm(n * n), bm(n * n);
  rep.rhs = 0;
  do {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cm[i * n + j] = c1.at(m[j] - static_cast<Index>(i));
        bm[i * n + j] = exp_coeff(epsilon, k + static_cast<Index>(j) - m[i]);
      }
    }
    CauchyBinetSummand s{m, determinant(cm, n), determinant(bm, n), 0};
    s.product = s.c_minor * s.b_minor;
    rep.rhs += s.product;
    if (s.product < 0) rep.all_nonnegative = false;
    rep.summands.push_back(std::move(s));
  } while (next_combination(m, top));

  rep.equal = rep.lhs == rep.rhs;
  rep.distinguished = rep.summands.front().product;
  rep.distinguished_closed = pow(c1[0], n) * (epsilon > 0 ? exp_minor_positive(epsilon, k, n)
                                                           : Rational(k == 0 ? 1 : 0));
  return rep;
}

namespace {

void check_points(const Rational& T, const std::vector<Rational>& xs) {
  if (T <= 0) throw Error(ErrorCode::nonpositive_T, "T must be positive");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] <= 0 || xs[i] >= T) {
      throw Error(ErrorCode::parameter_out_of_range, "evaluation point outside (0, T)");
    }
    if (i > 0 && xs[i] <= xs[i - 1]) {
      throw Error(ErrorCode::parameter_out_of_range, "evaluation points must increase");
    }
  }
}

const Rational kTailTolerance(1, 1000000);

BoundaryLimitReport finish(std::vector<PartialSum>& sums, const std::vector<Rational>& xs,
                           const Rational& T, std::size_t power, Index W,
                           const std::optional<Rational>& last, const std::optional<Rational>& prev) {
  BoundaryLimitReport rep;
  rep.xs = xs;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational factor = pow(1 - xs[i] / T, power);
    const Rational partial = sums[i].value();
    rep.values.push_back(factor * partial);
    std::optional<Rational> tail;
    if (last && prev && *prev > 0 && *last >= 0) {
      const Rational q = xs[i] * *last / *prev;
      if (q < 1) tail = factor * *last * pow(xs[i], static_cast<std::uint64_t>(W)) * q / (1 - q);
    }
    const bool flag = !tail || abs(*tail) > kTailTolerance * abs(rep.values.back());
    rep.tail_estimates.push_back(std::move(tail));
    rep.tail_flags.push_back(flag);
  }
  return rep;
}

}  // namespace

BoundaryLimitReport boundary_limit(const CoeffSeq& c, const Rational& T, std::size_t power,
                                   const std::vector<Rational>& xs) {
  return boundary_limit([&c](Index k) { return c.at(k); }, c.window(), T, power, xs);
}

BoundaryLimitReport boundary_limit(const CoeffGenerator& source, Index W, const Rational& T,
                                   std::size_t power, const std::vector<Rational>& xs) {
  check_points(T, xs);
  if (W < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
  std::vector<PartialSum> sums;
  sums.reserve(xs.size());
  for (const auto& x : xs) sums.emplace_back(x);
  std::optional<Rational> prev, last;
  for (Index k = 0; k <= W; ++k) {
    Rational ck = source(k);
    for (auto& s : sums) s.push(ck);
    prev = std::move(last);
    last = std::move(ck);
  }
  if (W == 0) prev.reset();
  return finish(sums, xs, T, power, W, last, prev);
}

}  // namespace pfforge
