#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "memsig/rational.hpp"

namespace memsig {

/// Dense row-major matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  /// Column vector (n x 1).
  static Matrix column(std::span<const Rational> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  std::span<const Rational> entries() const { return entries_; }
  std::span<const Rational> row(std::size_t i) const {
    return std::span<const Rational>(entries_).subspan(i * cols_, cols_);
  }

  Matrix transpose() const;
  bool is_zero() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(const Rational& scalar);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& s) { return a *= s; }
  friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Entrywise product of equally shaped matrices.
Matrix hadamard(const Matrix& a, const Matrix& b);

struct SymSkew {
  Matrix sym;
  Matrix skew;
};

/// (M + M^T)/2 and (M - M^T)/2.
SymSkew sym_skew_split(const Matrix& m);

}  // namespace memsig
