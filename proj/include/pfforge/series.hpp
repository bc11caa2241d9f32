#pragma once

#include <cstddef>
#include <vector>

#include "pfforge/coeff_seq.hpp"

namespace pfforge {

/// a_k(r) = (k+1)...(k+r-1)/(r-1)! for k = 0..W: the coefficients of 1/(1-z)^r.
CoeffSeq coeffs_inv_pow(std::size_t r, Index W);

/// Single coefficient a_k(r); zero for k < 0.
Integer inv_pow_coeff(std::size_t r, Index k);

/// Closed form of the contiguous minor det ||a_{k+j-i}(r)||_{i,j=1..n}:
///   prod_{i=1..n} (i-1)!/(r-i)! * (k+i)(k+i+1)...(k+i+r-n-1).
Rational lemma1_closed_form(std::size_t r, std::size_t n, Index k);

/// Finite PF_inf product e^{gamma z} prod(1 + alpha z) / prod(1 - beta z).
struct PFInfinitySpec {
  Rational gamma = 0;
  std::vector<Rational> alphas;
  std::vector<Rational> betas;

  void validate() const;
};

/// Coefficients of the product truncated at W.
CoeffSeq pf_infinity_sample(const PFInfinitySpec& spec, Index W);

/// Same coefficients produced one at a time without storing the sequence
/// (apart from the pre-exponential history when gamma != 0).
CoeffGenerator pf_infinity_stream(const PFInfinitySpec& spec);

/// Coefficients of h(z) = sum_{k>=0} z^{k!}: b_m = #{k : k! = m}.
CoeffSeq lacunary_h(Index W);

/// Coefficients b^p_k = (k+1)...(k+p) b_{k+p} of the p-th derivative, k = 0..W.
CoeffSeq derived_series_coeffs(const CoeffSeq& g, std::size_t p, Index W);

/// Coefficient a^p_k(r^2) of the p-th derivative of 1/(1-z)^{r^2}:
/// (k+1)...(k+r^2+p-1)/(r^2-1)!, zero for k < 0.
Integer derived_inv_pow_coeff(std::size_t r, std::size_t p, Index k);

/// Closed form of S_0^p(k, n), the contiguous order-n minor of the p-th
/// derivative sequence of 1/(1-z)^{r^2}:
///   prod_{j<p} (r^2+j)^n * lemma1_closed_form(r^2+p, n, k).
Rational s0_closed_form(std::size_t r, std::size_t p, std::size_t n, Index k);

/// c_k = a_k(r^2) + epsilon * g_k for k = 0..W.
CoeffSeq build_perturbed(const CoeffSeq& g, std::size_t r, const Rational& epsilon, Index W);

}  // namespace pfforge
