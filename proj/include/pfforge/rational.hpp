#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pfforge {

// GMP keeps mpq_class canonical (gcd 1, positive denominator) after every
// arithmetic operation; values built from raw parts go through make_rational.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Strict inverse of to_string: optional '-', digits, optional "/digits" with a
/// nonzero denominator. Non-canonical input ("2/4") is accepted and reduced.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, std::uint64_t exponent);
Integer factorial(std::uint64_t n);
Integer lcm(const Integer& a, const Integer& b);

/// Rational enclosure of sqrt(q) for q >= 0 with absolute width 2^-bits / den(q).
struct SqrtBounds {
  Rational lower;
  Rational upper;
};
SqrtBounds sqrt_bounds(const Rational& q, unsigned bits = 64);

/// Complex number with exact rational parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational real, Rational imag = 0) : re(std::move(real)), im(std::move(imag)) {}

  ComplexRational conj() const { return {re, -im}; }
  /// |z|^2, exact.
  Rational norm2() const { return re * re + im * im; }
  bool is_real() const { return im == 0; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator*(const Rational& s, const ComplexRational& a) {
    return {s * a.re, s * a.im};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b);
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  ComplexRational& operator+=(const ComplexRational& b) {
    re += b.re;
    im += b.im;
    return *this;
  }
};

ComplexRational pow(const ComplexRational& base, std::uint64_t exponent);

}  // namespace pfforge
