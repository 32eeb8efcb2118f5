#pragma once

#include <cstddef>
#include <vector>

#include "memsig/rational.hpp"

namespace memsig {

/// Dense univariate polynomial with rational coefficients; coeffs[j] is the
/// coefficient of t^j. Trailing zeros are trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(std::size_t degree, const Rational& c = Rational(1));

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  Rational operator()(const Rational& t) const;
  UniPoly derivative() const;
  /// Antiderivative vanishing at 0.
  UniPoly antiderivative() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace memsig
