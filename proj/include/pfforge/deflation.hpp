#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pfforge/coeff_seq.hpp"
#include "pfforge/minors.hpp"
#include "pfforge/pf_check.hpp"

namespace pfforge {

struct DeflationResult {
  CoeffSeq deflated;
  Rational T;
  std::size_t steps = 1;
  std::optional<PFVerdict> verdict;  ///< check_all_minors at order r - steps, when requested
};

struct DeflateOptions {
  bool allow_nonpositive = false;  ///< skip the c_k > 0 precondition
  std::optional<std::size_t> verdict_order;   ///< r; the verdict is taken at r - steps
  std::optional<Index> verdict_window;        ///< defaults to the deflated window
  ScanOptions scan;
};

/// c_k <- c_k - c_{k-1}/T, applied `steps` times: the coefficients of
/// (1 - z/T)^steps f(z). Throws nonpositive_T for T <= 0 and
/// nonpositive_input when some c_k <= 0 unless allow_nonpositive is set.
DeflationResult deflate(const CoeffSeq& c, const Rational& T, std::size_t steps = 1,
                        const DeflateOptions& options = {});

struct RadiusBracket {
  Rational T_lo;
  std::optional<Rational> T_hi;  ///< empty: no finite upper bound from the data
  std::vector<Rational> ratios;  ///< c_{k+1}/c_k
  bool non_increasing = true;
  std::vector<Index> violations; ///< k with ratios[k] > ratios[k-1]
};

/// T_lo = 1 / (c_W / c_{W-1}). For log-concave data the ratios decrease to
/// 1/T, so this is a lower bound on the radius of convergence. Throws
/// zero_coefficient when some c_k <= 0 and parameter_out_of_range for a
/// single coefficient.
RadiusBracket estimate_radius(const CoeffSeq& c);

/// a_k = sum_{m<=k} c1_m eps^{k-m}/(k-m)!, k = 0..W: coefficients of e^{eps z} f_1(z).
CoeffSeq mollify(const CoeffSeq& c1, const Rational& epsilon, Index W);

/// Contiguous minor det ||b_{k+j-i}||_{i,j=1..n} of b_m = eps^m / m!.
Rational exp_minor_positive(const Rational& epsilon, Index k, std::size_t n);

struct CauchyBinetSummand {
  std::vector<Index> m;   ///< m_1 < ... < m_n
  Rational c_minor;       ///< det ||c1_{m_j - i}||, i = 0..n-1
  Rational b_minor;       ///< det ||b_{k + j - m_i}||, j = 0..n-1
  Rational product;
};

struct CauchyBinetReport {
  Rational lhs;  ///< det ||a_{k+j-i}||_{i,j=1..n} of the mollified sequence
  Rational rhs;  ///< sum of summand products
  bool equal = false;
  std::vector<CauchyBinetSummand> summands;
  Rational distinguished;        ///< summand at m = (0, 1, ..., n-1)
  Rational distinguished_closed; ///< (c1_0)^n * exp_minor_positive(eps, k, n)
  bool all_nonnegative = true;
};

/// Evaluates both sides of the Cauchy-Binet expansion of the contiguous minor
/// of e^{eps z} f_1(z). Needs k + n - 1 <= c1.window().
CauchyBinetReport cauchy_binet_check(const CoeffSeq& c1, const Rational& epsilon, Index k,
                                     std::size_t n);

struct BoundaryLimitReport {
  std::vector<Rational> xs;
  std::vector<Rational> values;  ///< (1 - x/T)^power * sum_{k<=W} c_k x^k
  /// Estimated omitted tail c_W x^W * q/(1-q) with q = x * c_W/c_{W-1}, valid
  /// when the ratios keep decreasing past W; empty when q >= 1.
  std::vector<std::optional<Rational>> tail_estimates;
  /// Set when the tail estimate is missing or exceeds 1e-6 of the partial sum.
  std::vector<bool> tail_flags;
};

BoundaryLimitReport boundary_limit(const CoeffSeq& c, const Rational& T, std::size_t power,
                                   const std::vector<Rational>& xs);

/// Same evaluation over coefficients 0..W drawn from a generator in one pass.
BoundaryLimitReport boundary_limit(const CoeffGenerator& source, Index W, const Rational& T,
                                   std::size_t power, const std::vector<Rational>& xs);

}  // namespace pfforge
