#include "pfforge/rational.hpp"

#include <cctype>

#include "pfforge/error.hpp"

namespace pfforge {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::index_out_of_window: return "index-out-of-window";
    case ErrorCode::parameter_out_of_range: return "parameter-out-of-range";
    case ErrorCode::budget_exceeded: return "budget-exceeded";
    case ErrorCode::window_mismatch: return "window-mismatch";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::malformed_polyline: return "malformed-polyline";
    case ErrorCode::domain_invalid: return "domain-invalid";
    case ErrorCode::geometry_degenerate: return "geometry-degenerate";
    case ErrorCode::tail_condition_unsatisfiable: return "tail-condition-unsatisfiable";
    case ErrorCode::nonpositive_T: return "nonpositive-T";
    case ErrorCode::zero_coefficient: return "zero-coefficient";
    case ErrorCode::nonpositive_input: return "nonpositive-input";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
  }
  return "unknown";
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorCode::parameter_out_of_range, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_part = body.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num_part) || !all_digits(den_part)) {
    throw Error(ErrorCode::parse_error, "not a rational: '" + std::string(text) + "'");
  }
  Integer num(std::string(num_part), 10);
  Integer den(std::string(den_part), 10);
  if (den == 0) throw Error(ErrorCode::parse_error, "zero denominator: '" + std::string(text) + "'");
  if (negative) num = -num;
  return make_rational(num, den);
}

Rational pow(const Rational& base, std::uint64_t exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  // Powers of coprime parts stay coprime.
  Rational out;
  out.get_num() = std::move(num);
  out.get_den() = std::move(den);
  return out;
}

Integer factorial(std::uint64_t n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

SqrtBounds sqrt_bounds(const Rational& q, unsigned bits) {
  if (q < 0) throw Error(ErrorCode::parameter_out_of_range, "sqrt of negative rational");
  // sqrt(a/b) = sqrt(a*b)/b; scale a*b by 4^bits before the integer root.
  Integer scaled = q.get_num() * q.get_den();
  scaled <<= 2 * bits;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());
  Integer den = q.get_den();
  den <<= bits;
  SqrtBounds out;
  out.lower = make_rational(root, den);
  if (root * root == scaled) {
    out.upper = out.lower;
  } else {
    out.upper = make_rational(root + 1, den);
  }
  return out;
}

ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
  const Rational n = b.norm2();
  if (n == 0) throw Error(ErrorCode::parameter_out_of_range, "complex division by zero");
  const ComplexRational t = a * b.conj();
  return {t.re / n, t.im / n};
}

ComplexRational pow(const ComplexRational& base, std::uint64_t exponent) {
  ComplexRational result(1);
  ComplexRational b = base;
  while (exponent > 0) {
    if (exponent & 1u) result = result * b;
    exponent >>= 1;
    if (exponent > 0) b = b * b;
  }
  return result;
}

}  // namespace pfforge
