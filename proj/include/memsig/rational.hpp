#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "memsig/error.hpp"

namespace memsig {

/// Exact rational number backed by GMP.
///
/// Always in lowest terms with a positive denominator, so equality is
/// structural. Text form is "p" or "p/q" (decimal, canonical).
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(unsigned long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value);               // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(mpq_class value);

  /// Parses "p" or "p/q" with optional leading sign; throws ParseError.
  static Rational parse(std::string_view text);

  std::string str() const { return value_.get_str(); }
  double to_double() const { return value_.get_d(); }

  const mpz_class& numerator() const { return value_.get_num(); }
  const mpz_class& denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  /// this += a * b, without a temporary.
  void add_product(const Rational& a, const Rational& b);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const { return Rational(mpq_class(-value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

Rational abs(const Rational& r);
Rational pow(const Rational& base, unsigned exponent);
Rational factorial(unsigned n);
Rational binomial(long n, long k);

}  // namespace memsig
