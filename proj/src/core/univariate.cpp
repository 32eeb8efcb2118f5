#include "memsig/univariate.hpp"

#include <algorithm>

namespace memsig {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> cs(degree + 1);
  cs[degree] = c;
  return UniPoly(std::move(cs));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational UniPoly::operator()(const Rational& t) const {
  Rational acc;
  for (std::size_t j = coeffs_.size(); j-- > 0;) acc = acc * t + coeffs_[j];
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = coeffs_[j] * Rational(static_cast<long>(j));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::antiderivative() const {
  if (coeffs_.empty()) return UniPoly();
  std::vector<Rational> a(coeffs_.size() + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) a[j + 1] = coeffs_[j] / Rational(static_cast<long>(j + 1));
  return UniPoly(std::move(a));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) c[j] += a.coeffs_[j];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[j] += b.coeffs_[j];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t j = 0; j < a.coeffs_.size(); ++j) c[j] += a.coeffs_[j];
  for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[j] -= b.coeffs_[j];
  return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return UniPoly();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j].add_product(a.coeffs_[i], b.coeffs_[j]);
  return UniPoly(std::move(c));
}

}  // namespace memsig
