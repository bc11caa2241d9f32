#include "pfforge/series.hpp"

#include <memory>
#include <string>

#include "pfforge/error.hpp"

namespace pfforge {

namespace {

void require_window(Index W) {
  if (W < 0) throw Error(ErrorCode::parameter_out_of_range, "window must be >= 0");
}

// (from)(from+1)...(from+count-1); empty product is 1.
Integer rising_product(Index from, std::size_t count) {
  Integer out = 1;
  for (std::size_t t = 0; t < count; ++t) out *= static_cast<long>(from + static_cast<Index>(t));
  return out;
}

}  // namespace

Integer inv_pow_coeff(std::size_t r, Index k) {
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "power r must be >= 1");
  if (k < 0) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(k + static_cast<Index>(r) - 1),
               static_cast<unsigned long>(r - 1));
  return out;
}

CoeffSeq coeffs_inv_pow(std::size_t r, Index W) {
  require_window(W);
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "power r must be >= 1");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(W + 1));
  // a_{k+1} = a_k (k+r)/(k+1)
  Integer a = 1;
  for (Index k = 0; k <= W; ++k) {
    out.emplace_back(a);
    a *= static_cast<unsigned long>(k + static_cast<Index>(r));
    mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(k + 1));
  }
  return CoeffSeq(std::move(out));
}

Rational lemma1_closed_form(std::size_t r, std::size_t n, Index k) {
  if (n < 1 || n > r) {
    throw Error(ErrorCode::parameter_out_of_range, "lemma 1 form needs 1 <= n <= r");
  }
  if (k < 0) throw Error(ErrorCode::parameter_out_of_range, "lemma 1 form needs k >= 0");
  Integer num = 1;
  Integer den = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    num *= factorial(i - 1);
    den *= factorial(r - i);
    num *= rising_product(k + static_cast<Index>(i), r - n);
  }
  return make_rational(num, den);
}

void PFInfinitySpec::validate() const {
  if (gamma < 0) throw Error(ErrorCode::parameter_out_of_range, "gamma must be >= 0");
  for (const auto& a : alphas) {
    if (a < 0) throw Error(ErrorCode::parameter_out_of_range, "alpha factors must be >= 0");
  }
  for (const auto& b : betas) {
    if (b < 0) throw Error(ErrorCode::parameter_out_of_range, "beta factors must be >= 0");
  }
}

CoeffSeq pf_infinity_sample(const PFInfinitySpec& spec, Index W) {
  require_window(W);
  spec.validate();
  const std::size_t size = static_cast<std::size_t>(W + 1);
  std::vector<Rational> c(size, Rational(0));
  c[0] = 1;
  for (const auto& alpha : spec.alphas) {
    for (std::size_t k = size - 1; k >= 1; --k) c[k] += alpha * c[k - 1];
  }
  for (const auto& beta : spec.betas) {
    for (std::size_t k = 1; k < size; ++k) c[k] += beta * c[k - 1];
  }
  if (spec.gamma != 0) {
    std::vector<Rational> e(size);
    e[0] = 1;
    for (std::size_t m = 1; m < size; ++m) e[m] = e[m - 1] * spec.gamma / Rational(m);
    std::vector<Rational> conv(size, Rational(0));
    for (std::size_t k = 0; k < size; ++k) {
      for (std::size_t m = 0; m <= k; ++m) conv[k] += c[m] * e[k - m];
    }
    c = std::move(conv);
  }
  return CoeffSeq(std::move(c));
}

namespace {

// Each factor keeps O(1) state; the exponential keeps the history it convolves.
struct PFStreamState {
  PFInfinitySpec spec;
  Index next_k = 0;
  std::vector<Rational> alpha_prev_in;
  std::vector<Rational> beta_prev_out;
  std::vector<Rational> history;
  std::vector<Rational> exp_coeffs;

  Rational base(Index k) {
    Rational value = k == 0 ? Rational(1) : Rational(0);
    for (std::size_t f = 0; f < spec.alphas.size(); ++f) {
      Rational out = value + spec.alphas[f] * alpha_prev_in[f];
      alpha_prev_in[f] = std::move(value);
      value = std::move(out);
    }
    for (std::size_t f = 0; f < spec.betas.size(); ++f) {
      value += spec.betas[f] * beta_prev_out[f];
      beta_prev_out[f] = value;
    }
    return value;
  }

  Rational operator()(Index k) {
    if (k != next_k) {
      throw Error(ErrorCode::parameter_out_of_range, "coefficient stream must be read in order");
    }
    ++next_k;
    Rational value = base(k);
    if (spec.gamma == 0) return value;
    history.push_back(std::move(value));
    const std::size_t uk = static_cast<std::size_t>(k);
    exp_coeffs.push_back(uk == 0 ? Rational(1) : exp_coeffs.back() * spec.gamma / Rational(uk));
    Rational out = 0;
    for (std::size_t m = 0; m <= uk; ++m) out += history[m] * exp_coeffs[uk - m];
    return out;
  }
};

}  // namespace

CoeffGenerator pf_infinity_stream(const PFInfinitySpec& spec) {
  spec.validate();
  auto state = std::make_shared<PFStreamState>();
  state->spec = spec;
  state->alpha_prev_in.assign(spec.alphas.size(), Rational(0));
  state->beta_prev_out.assign(spec.betas.size(), Rational(0));
  return [state](Index k) { return (*state)(k); };
}

CoeffSeq lacunary_h(Index W) {
  require_window(W);
  std::vector<Rational> b(static_cast<std::size_t>(W + 1), Rational(0));
  Integer fact = 1;
  for (unsigned long k = 0;; ++k) {
    if (k > 0) fact *= k;
    if (fact > W) break;
    b[fact.get_ui()] += 1;
  }
  return CoeffSeq(std::move(b));
}

CoeffSeq derived_series_coeffs(const CoeffSeq& g, std::size_t p, Index W) {
  require_window(W);
  const Index top = W + static_cast<Index>(p);
  if (top > g.window()) {
    throw Error(ErrorCode::index_out_of_window,
                "derivative of order " + std::to_string(p) + " up to " + std::to_string(W) +
                    " needs coefficients to " + std::to_string(top) + ", window is " +
                    std::to_string(g.window()));
  }
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(W + 1));
  for (Index k = 0; k <= W; ++k) {
    out.emplace_back(g[static_cast<std::size_t>(k + static_cast<Index>(p))] *
                     rising_product(k + 1, p));
  }
  return CoeffSeq(std::move(out));
}

Integer derived_inv_pow_coeff(std::size_t r, std::size_t p, Index k) {
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "r must be >= 1");
  if (k < 0) return 0;
  const std::size_t r2 = r * r;
  Integer out = rising_product(k + 1, r2 + p - 1);
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), factorial(r2 - 1).get_mpz_t());
  return out;
}

Rational s0_closed_form(std::size_t r, std::size_t p, std::size_t n, Index k) {
  if (r == 0 || n < 1 || n > r) {
    throw Error(ErrorCode::parameter_out_of_range, "S_0 form needs 1 <= n <= r");
  }
  if (k < 0) throw Error(ErrorCode::parameter_out_of_range, "S_0 form needs k >= 0");
  const std::size_t r2 = r * r;
  Integer lead = 1;
  for (std::size_t j = 0; j < p; ++j) lead *= static_cast<unsigned long>(r2 + j);
  Integer lead_n;
  mpz_pow_ui(lead_n.get_mpz_t(), lead.get_mpz_t(), n);
  return Rational(lead_n) * lemma1_closed_form(r2 + p, n, k);
}

CoeffSeq build_perturbed(const CoeffSeq& g, std::size_t r, const Rational& epsilon, Index W) {
  require_window(W);
  if (r == 0) throw Error(ErrorCode::parameter_out_of_range, "r must be >= 1");
  if (W > g.window()) {
    throw Error(ErrorCode::window_mismatch,
                "perturbation window " + std::to_string(W) + " exceeds g window " +
                    std::to_string(g.window()));
  }
  const CoeffSeq base = coeffs_inv_pow(r * r, W);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(W + 1));
  for (Index k = 0; k <= W; ++k) out.push_back(base[static_cast<std::size_t>(k)] + epsilon * g[static_cast<std::size_t>(k)]);
  return CoeffSeq(std::move(out));
}

}  // namespace pfforge
