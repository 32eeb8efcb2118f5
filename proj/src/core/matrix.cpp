#include "memsig/matrix.hpp"

#include <string>

namespace memsig {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_)
    throw ShapeError("matrix entry count " + std::to_string(entries_.size()) + " != " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix literal");
    entries_.insert(entries_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::column(std::span<const Rational> values) {
  return Matrix(values.size(), 1, std::vector<Rational>(values.begin(), values.end()));
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix sum shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ShapeError("matrix difference shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

Matrix& Matrix::operator*=(const Rational& scalar) {
  for (auto& e : entries_) e *= scalar;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_)
    throw ShapeError("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                     std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                     std::to_string(b.cols_));
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j).add_product(aik, b(k, j));
    }
  return c;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational& aij = a(i, j);
      if (aij.is_zero()) continue;
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = aij * b(p, q);
    }
  return k;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("hadamard shape mismatch");
  Matrix h(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) h(i, j) = a(i, j) * b(i, j);
  return h;
}

SymSkew sym_skew_split(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("sym/skew split needs a square matrix");
  const std::size_t n = m.rows();
  const Rational half(1, 2);
  SymSkew out{Matrix(n, n), Matrix(n, n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      out.sym(i, j) = (m(i, j) + m(j, i)) * half;
      out.skew(i, j) = (m(i, j) - m(j, i)) * half;
    }
  return out;
}

}  // namespace memsig
