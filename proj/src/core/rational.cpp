#include "memsig/rational.hpp"

#include <cctype>

namespace memsig {

namespace {

bool valid_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  std::string digits(s);
  if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
  return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long long value) {
  // mpz has no long long constructor; go through the string form.
  value_ = mpq_class(mpz_class(std::to_string(value), 10));
}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer_text(text, true))
      throw ParseError("not a rational: \"" + std::string(text) + "\"");
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!valid_integer_text(num, true) || !valid_integer_text(den, false))
    throw ParseError("not a rational: \"" + std::string(text) + "\"");
  const mpz_class d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(parse_integer(num), d);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  value_ /= rhs.value_;
  return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
  if (a.is_zero() || b.is_zero()) return;
  mpq_t tmp;
  mpq_init(tmp);
  mpq_mul(tmp, a.value_.get_mpq_t(), b.value_.get_mpq_t());
  mpq_add(value_.get_mpq_t(), value_.get_mpq_t(), tmp);
  mpq_clear(tmp);
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& base, unsigned exponent) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), exponent);
  return Rational(num, den);
}

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Rational(0);
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace memsig
