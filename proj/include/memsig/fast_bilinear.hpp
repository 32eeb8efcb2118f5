#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "memsig/grid.hpp"
#include "memsig/matrix.hpp"
#include "memsig/rational.hpp"
#include "memsig/tensor.hpp"

namespace memsig {

/// The piecewise constant d_1 d_2 X_i; at(i, a, b) is its value on cell
/// (a, b) = [a/m, (a+1)/m] x [b/n, (b+1)/n], cells 0-based.
struct CellDerivs {
  std::size_t d = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Rational> values;  // [i][a][b]

  const Rational& at(std::size_t i, std::size_t a, std::size_t b) const { return values[(i * m + a) * n + b]; }
  /// The m x n table of coordinate i, row-major in (a, b).
  std::span<const Rational> letter(std::size_t i) const {
    return std::span<const Rational>(values).subspan(i * m * n, m * n);
  }
};

/// mn times the mixed second difference of every cell.
CellDerivs cell_derivatives(const GridData& grid);

/// A continuous function on [0,1]^2 that is a polynomial on every cell of the
/// m x n grid. Each cell stores a (J+1) x (J+1) table in the global
/// coordinates (u, v): coeff(a, b, p, q) multiplies u^p v^q. J is the length
/// of the word the field was built from.
class CellPolyField {
 public:
  CellPolyField(std::size_t m, std::size_t n, std::size_t length, std::vector<Rational> coeffs);

  /// The field of the empty word: 1 on every cell.
  static CellPolyField constant_one(std::size_t m, std::size_t n);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t length() const { return length_; }
  std::size_t stride() const { return length_ + 1; }

  std::span<const Rational> cell(std::size_t a, std::size_t b) const {
    const std::size_t size = stride() * stride();
    return std::span<const Rational>(coeffs_).subspan((a * n_ + b) * size, size);
  }
  const Rational& coeff(std::size_t a, std::size_t b, std::size_t p, std::size_t q) const {
    return cell(a, b)[p * stride() + q];
  }

  /// The polynomial of cell (a, b) at (u, v); (u, v) need not lie in the cell.
  Rational evaluate(std::size_t a, std::size_t b, const Rational& u, const Rational& v) const;
  /// The field at (u, v) in [0,1]^2.
  Rational evaluate(const Rational& u, const Rational& v) const;

  /// Largest exponent of u or v with a nonzero coefficient in any cell.
  std::size_t max_bidegree() const;

 private:
  std::size_t m_;
  std::size_t n_;
  std::size_t length_;
  std::vector<Rational> coeffs_;
};

/// f' (u, v) = int_0^u int_0^v f(s, t) c(s, t) dt ds, where c is the cell-wise
/// constant given by derivs (m x n, row-major).
CellPolyField advance_letter(const CellPolyField& f, std::span<const Rational> derivs);

/// advance_letter(f, derivs) evaluated at (1, 1), without building the field.
Rational total_integral(const CellPolyField& f, std::span<const Rational> derivs);

Rational sig_word_fast(const GridData& grid, const Word& word);
SigTensor sig_tensor_fast(const GridData& grid, std::size_t level);
Matrix sig_matrix_fast(const GridData& grid);

}  // namespace memsig
