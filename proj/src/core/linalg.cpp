#include "memsig/linalg.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>

namespace memsig {

namespace {

using IntegerRows = std::vector<std::vector<mpz_class>>;

// Scale each row by the lcm of its denominators. Returns the product of the
// scale factors so determinants can be recovered.
IntegerRows clear_denominators(const Matrix& m, mpz_class* scale_product) {
  IntegerRows rows(m.rows(), std::vector<mpz_class>(m.cols()));
  mpz_class product = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).denominator().get_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational& e = m(i, j);
      rows[i][j] = e.numerator() * (l / e.denominator());
    }
    product *= l;
  }
  if (scale_product) *scale_product = product;
  return rows;
}

// Fraction-free row echelon in place. Returns the rank; `swaps` counts row
// exchanges and `last_pivot` receives the final pivot (the determinant of
// the full-rank leading minor).
std::size_t bareiss(IntegerRows& a, std::size_t cols, std::size_t* swaps, mpz_class* last_pivot) {
  const std::size_t rows = a.size();
  std::size_t k = 0;
  std::size_t nswaps = 0;
  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t c = 0; c < cols && k < rows; ++c) {
    std::size_t p = k;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != k) {
      std::swap(a[p], a[k]);
      ++nswaps;
    }
    const mpz_class& pivot = a[k][c];
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        // a[i][j] = (pivot * a[i][j] - a[i][c] * a[k][j]) / prev
        tmp = a[i][c] * a[k][j];
        a[i][j] *= pivot;
        a[i][j] -= tmp;
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = pivot;
    ++k;
  }
  if (swaps) *swaps = nswaps;
  if (last_pivot) *last_pivot = prev;
  return k;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  // eliminate along the shorter side
  IntegerRows a = m.rows() <= m.cols() ? clear_denominators(m.transpose(), nullptr)
                                       : clear_denominators(m, nullptr);
  const std::size_t cols = std::min(m.rows(), m.cols());
  return bareiss(a, cols, nullptr, nullptr);
}

Rational det(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  mpz_class scale;
  IntegerRows a = clear_denominators(m, &scale);
  std::size_t swaps = 0;
  mpz_class pivot;
  if (bareiss(a, n, &swaps, &pivot) < n) return Rational(0);
  Rational d(a[n - 1][n - 1], scale);
  return swaps % 2 ? -d : d;
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw DomainError("matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational scale = Rational(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= scale;
      inv(c, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

Rational pfaffian(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("pfaffian of a non-square matrix");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (m(i, j) != -m(j, i)) throw DomainError("pfaffian of a matrix that is not skew-symmetric");
  if (n % 2 != 0) throw DomainError("pfaffian of an odd-sized matrix");

  Matrix a = m;
  Rational pf(1);
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t p = k + 1;
    while (p < n && a(k, p).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != k + 1) {
      // simultaneous row/column swap k+1 <-> p negates the Pfaffian
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(p, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, p));
      pf = -pf;
    }
    const Rational pivot = a(k, k + 1);
    pf *= pivot;
    const Rational inv_pivot = Rational(1) / pivot;
    for (std::size_t i = k + 2; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational update = a(k + 1, i) * a(k, j) - a(k, i) * a(k + 1, j);
        if (update.is_zero()) continue;
        update *= inv_pivot;
        a(i, j) += update;
        a(j, i) = -a(i, j);
      }
  }
  return pf;
}

Matrix cosquare(const Matrix& m) { return inverse(m).transpose() * m; }

namespace {

std::vector<std::size_t> rank_sequence(const Matrix& b, std::size_t n) {
  std::vector<std::size_t> ranks{n};
  Matrix power = Matrix::identity(n);
  for (std::size_t j = 1; j <= n; ++j) {
    power = power * b;
    const std::size_t r = rank(power);
    ranks.push_back(r);
    if (r == ranks[j - 1]) break;
  }
  return ranks;
}

void append_blocks(const std::vector<std::size_t>& ranks, int eigenvalue,
                   std::vector<JordanBlock>& blocks) {
  auto r = [&](std::size_t j) { return j < ranks.size() ? ranks[j] : ranks.back(); };
  for (std::size_t s = 1; s < ranks.size(); ++s) {
    // (#blocks of size >= s) - (#blocks of size >= s+1)
    const std::size_t at_least_s = r(s - 1) - r(s);
    const std::size_t at_least_next = r(s) - r(s + 1);
    for (std::size_t c = 0; c < at_least_s - at_least_next; ++c) blocks.push_back({eigenvalue, s});
  }
}

}  // namespace

JordanStructure pm1_jordan_structure(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("jordan structure of a non-square matrix");
  const std::size_t n = m.rows();
  const Matrix id = Matrix::identity(n);
  JordanStructure js;
  js.ranks_plus = rank_sequence(m - id, n);
  js.ranks_minus = rank_sequence(m + id, n);
  const std::size_t mult_plus = n - js.ranks_plus.back();
  const std::size_t mult_minus = n - js.ranks_minus.back();
  if (mult_plus + mult_minus != n)
    throw DomainError("matrix has eigenvalues other than +1 and -1 (generalized eigenspaces span " +
                      std::to_string(mult_plus + mult_minus) + " of " + std::to_string(n) +
                      " dimensions)");
  append_blocks(js.ranks_plus, +1, js.blocks);
  append_blocks(js.ranks_minus, -1, js.blocks);
  std::sort(js.blocks.begin(), js.blocks.end(), std::greater<>());
  return js;
}

std::vector<std::size_t> ranks_from_blocks(const std::vector<JordanBlock>& blocks, int eigenvalue,
                                           std::size_t n, std::size_t max_power) {
  std::vector<std::size_t> ranks;
  for (std::size_t j = 0; j <= max_power; ++j) {
    std::size_t nullity = 0;
    for (const auto& b : blocks)
      if (b.eigenvalue == eigenvalue) nullity += std::min(b.size, j);
    ranks.push_back(n - nullity);
  }
  return ranks;
}

}  // namespace memsig
