#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "memsig/matrix.hpp"
#include "memsig/rational.hpp"

namespace memsig {

/// Flattening (i, j) -> n*i + j of [m] x [n] (0-based), i.e. n(i-1)+j in
/// 1-based notation.
struct VectorizationNu {
  std::size_t m;
  std::size_t n;

  std::size_t operator()(std::size_t i, std::size_t j) const { return n * i + j; }
  std::pair<std::size_t, std::size_t> split(std::size_t index) const { return {index / n, index % n}; }
  std::size_t size() const { return m * n; }
};

/// Samples of a d-dimensional membrane on the uniform (m+1) x (n+1) node grid:
/// at(i, a, b) = X_i(a/m, b/n). The first grid direction is s, the second t.
class GridData {
 public:
  GridData(std::size_t d, std::size_t m, std::size_t n);
  GridData(std::size_t d, std::size_t m, std::size_t n, std::vector<Rational> values);

  static GridData from_function(
      std::size_t d, std::size_t m, std::size_t n,
      const std::function<Rational(std::size_t i, std::size_t a, std::size_t b)>& value);

  std::size_t d() const { return d_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }

  const Rational& at(std::size_t i, std::size_t a, std::size_t b) const {
    return values_[(i * (m_ + 1) + a) * (n_ + 1) + b];
  }
  Rational& at(std::size_t i, std::size_t a, std::size_t b) {
    return values_[(i * (m_ + 1) + a) * (n_ + 1) + b];
  }
  std::span<const Rational> values() const { return values_; }

  /// X_i(a/m, b/n) - X_i((a-1)/m, b/n) - X_i(a/m, (b-1)/n) + X_i((a-1)/m, (b-1)/n)
  /// for the cell with upper-right node (a, b), 1 <= a <= m, 1 <= b <= n.
  Rational mixed_difference(std::size_t i, std::size_t a, std::size_t b) const;

  friend bool operator==(const GridData&, const GridData&) = default;

 private:
  std::size_t d_;
  std::size_t m_;
  std::size_t n_;
  std::vector<Rational> values_;
};

/// X(s,t) - X(0,t) - X(s,0) + X(0,0) at every node.
GridData reduce_grid(const GridData& grid);

/// The unique A (d x mn, nu-ordered) with X = A o Axis^{m,n} + (piecewise linear part).
/// Column nu(i, j) is the mixed difference of cell (i, j).
Matrix bilinear_decompose(const GridData& grid);

/// Node values of the axis membrane: dimension nu(i,j) at node (a,b) is [i < a][j < b].
GridData axis_node_grid(std::size_t m, std::size_t n);

/// Coordinate (i, j) of Axis^{m,n} at (s, t), cells 0-based.
Rational axis_membrane_eval(std::size_t m, std::size_t n, std::size_t i, std::size_t j,
                            const Rational& s, const Rational& t);

}  // namespace memsig
