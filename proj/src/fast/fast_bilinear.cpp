#include "memsig/fast_bilinear.hpp"

#include <string>

namespace memsig {

namespace {

// powers[a * (degree + 1) + p] = (a / cells)^p for nodes a = 0..cells.
std::vector<Rational> node_powers(std::size_t cells, std::size_t degree) {
  std::vector<Rational> powers((cells + 1) * (degree + 1));
  for (std::size_t a = 0; a <= cells; ++a) {
    const Rational x(static_cast<long>(a), static_cast<long>(cells));
    Rational acc(1);
    for (std::size_t p = 0; p <= degree; ++p) {
      powers[a * (degree + 1) + p] = acc;
      acc *= x;
    }
  }
  return powers;
}

// moments[a * (degree + 1) + p] = int over cell a of x^p dx.
std::vector<Rational> cell_moments(std::size_t cells, std::size_t degree) {
  const std::vector<Rational> powers = node_powers(cells, degree + 1);
  const std::size_t w = degree + 2;
  std::vector<Rational> moments(cells * (degree + 1));
  for (std::size_t a = 0; a < cells; ++a)
    for (std::size_t p = 0; p <= degree; ++p)
      moments[a * (degree + 1) + p] =
          (powers[(a + 1) * w + p + 1] - powers[a * w + p + 1]) / Rational(static_cast<long>(p + 1));
  return moments;
}

void check_derivs(const CellPolyField& f, std::span<const Rational> derivs) {
  if (derivs.size() != f.m() * f.n())
    throw ShapeError("cell derivative table has " + std::to_string(derivs.size()) + " entries, field has " +
                     std::to_string(f.m() * f.n()) + " cells");
}

}  // namespace

CellDerivs cell_derivatives(const GridData& grid) {
  CellDerivs out{grid.d(), grid.m(), grid.n(), std::vector<Rational>(grid.d() * grid.m() * grid.n())};
  const Rational scale(static_cast<long>(grid.m() * grid.n()));
  for (std::size_t i = 0; i < grid.d(); ++i)
    for (std::size_t a = 0; a < grid.m(); ++a)
      for (std::size_t b = 0; b < grid.n(); ++b)
        out.values[(i * grid.m() + a) * grid.n() + b] = scale * grid.mixed_difference(i, a + 1, b + 1);
  return out;
}

CellPolyField::CellPolyField(std::size_t m, std::size_t n, std::size_t length, std::vector<Rational> coeffs)
    : m_(m), n_(n), length_(length), coeffs_(std::move(coeffs)) {
  if (m == 0 || n == 0) throw ShapeError("cell field needs m, n >= 1");
  if (coeffs_.size() != m * n * stride() * stride())
    throw ShapeError("malformed cell field: " + std::to_string(coeffs_.size()) + " coefficients for " +
                     std::to_string(m * n) + " cells of bidegree " + std::to_string(length));
}

CellPolyField CellPolyField::constant_one(std::size_t m, std::size_t n) {
  return CellPolyField(m, n, 0, std::vector<Rational>(m * n, Rational(1)));
}

Rational CellPolyField::evaluate(std::size_t a, std::size_t b, const Rational& u, const Rational& v) const {
  if (a >= m_ || b >= n_) throw ShapeError("cell index out of range");
  const auto table = cell(a, b);
  Rational result;
  for (std::size_t p = stride(); p-- > 0;) {
    Rational row;
    for (std::size_t q = stride(); q-- > 0;) {
      row *= v;
      row += table[p * stride() + q];
    }
    result *= u;
    result += row;
  }
  return result;
}

Rational CellPolyField::evaluate(const Rational& u, const Rational& v) const {
  if (u < Rational(0) || u > Rational(1) || v < Rational(0) || v > Rational(1))
    throw DomainError("field evaluated outside [0,1]^2");
  auto locate = [](const Rational& x, std::size_t cells) {
    mpz_class k = (x.numerator() * static_cast<unsigned long>(cells)) / x.denominator();
    const std::size_t index = k.get_ui();
    return index >= cells ? cells - 1 : index;
  };
  return evaluate(locate(u, m_), locate(v, n_), u, v);
}

std::size_t CellPolyField::max_bidegree() const {
  std::size_t best = 0;
  const std::size_t w = stride();
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    const std::size_t local = k % (w * w);
    best = std::max({best, local / w, local % w});
  }
  return best;
}

CellPolyField advance_letter(const CellPolyField& f, std::span<const Rational> derivs) {
  check_derivs(f, derivs);
  const std::size_t m = f.m();
  const std::size_t n = f.n();
  const std::size_t ws = f.stride();  // old table width J + 1
  const std::size_t w = ws + 1;       // new table width J + 2
  const std::size_t degree = w - 1;

  const std::vector<Rational> spow = node_powers(m, degree);
  const std::vector<Rational> tpow = node_powers(n, degree);
  std::vector<Rational> weights(ws * ws);
  for (std::size_t p = 0; p < ws; ++p)
    for (std::size_t q = 0; q < ws; ++q)
      weights[p * ws + q] = Rational(1, static_cast<long>((p + 1) * (q + 1)));

  std::vector<Rational> out(m * n * w * w);
  // Running prefix sums: strips below in s (per column b), strips to the
  // left in t (per row), and full cells below-left.
  std::vector<Rational> col_h(n * w);
  std::vector<Rational> col_full(n);
  std::vector<Rational> row_k(w);
  Rational corner;

  std::vector<Rational> prim(w * w);  // P(u, v) = int_0^u int_0^v c f
  std::vector<Rational> a_lo(w), a_hi(w), b_lo(w), b_hi(w);
  Rational tmp;

  for (std::size_t a = 0; a < m; ++a) {
    std::fill(row_k.begin(), row_k.end(), Rational(0));
    corner = 0;
    const Rational* slo = &spow[a * w];
    const Rational* shi = &spow[(a + 1) * w];
    for (std::size_t b = 0; b < n; ++b) {
      const Rational* tlo = &tpow[b * w];
      const Rational* thi = &tpow[(b + 1) * w];
      Rational* cell = &out[(a * n + b) * w * w];
      Rational* h = &col_h[b * w];
      const Rational& c = derivs[a * n + b];

      // Contributions of the regions outside the cell's own rectangle.
      for (std::size_t q = 0; q < w; ++q) cell[q] += h[q];
      for (std::size_t p = 0; p < w; ++p) cell[p * w] += row_k[p];
      cell[0] += corner;
      corner += col_full[b];

      if (c.is_zero()) continue;

      const auto src = f.cell(a, b);
      for (std::size_t p = 0; p < ws; ++p)
        for (std::size_t q = 0; q < ws; ++q) {
          Rational& e = prim[(p + 1) * w + q + 1];
          e = src[p * ws + q];
          if (e.is_zero()) continue;
          e *= weights[p * ws + q];
          e *= c;
        }

      // P at u = s_lo, s_hi (tables in v) and at v = t_lo, t_hi (tables in u).
      for (std::size_t k = 0; k < w; ++k) {
        a_lo[k] = 0;
        a_hi[k] = 0;
        b_lo[k] = 0;
        b_hi[k] = 0;
      }
      for (std::size_t p = 1; p < w; ++p)
        for (std::size_t q = 1; q < w; ++q) {
          const Rational& e = prim[p * w + q];
          if (e.is_zero()) continue;
          a_lo[q].add_product(e, slo[p]);
          a_hi[q].add_product(e, shi[p]);
          b_lo[p].add_product(e, tlo[q]);
          b_hi[p].add_product(e, thi[q]);
        }
      Rational p_ll, p_hl, p_lh, p_hh;
      for (std::size_t q = 1; q < w; ++q) {
        p_ll.add_product(a_lo[q], tlo[q]);
        p_hl.add_product(a_hi[q], tlo[q]);
        p_lh.add_product(a_lo[q], thi[q]);
        p_hh.add_product(a_hi[q], thi[q]);
      }

      // Ur(u, v) = P(u, v) - P(s_lo, v) - P(u, t_lo) + P(s_lo, t_lo).
      for (std::size_t p = 1; p < w; ++p)
        for (std::size_t q = 1; q < w; ++q) cell[p * w + q] += prim[p * w + q];
      for (std::size_t q = 1; q < w; ++q) cell[q] -= a_lo[q];
      for (std::size_t p = 1; p < w; ++p) cell[p * w] -= b_lo[p];
      cell[0] += p_ll;

      // H(v) = Ur(s_hi, v), K(u) = Ur(u, t_hi), full = Ur(s_hi, t_hi).
      for (std::size_t q = 1; q < w; ++q) {
        h[q] += a_hi[q];
        h[q] -= a_lo[q];
      }
      tmp = p_hl;
      tmp -= p_ll;
      h[0] -= tmp;
      for (std::size_t p = 1; p < w; ++p) {
        row_k[p] += b_hi[p];
        row_k[p] -= b_lo[p];
      }
      tmp = p_lh;
      tmp -= p_ll;
      row_k[0] -= tmp;
      tmp = p_hh;
      tmp -= p_lh;
      tmp -= p_hl;
      tmp += p_ll;
      col_full[b] += tmp;
    }
  }

  CellPolyField result(m, n, f.length() + 1, std::move(out));
  if (result.max_bidegree() > result.length())
    throw DomainError("cell field exceeded its bidegree bound");
  return result;
}

Rational total_integral(const CellPolyField& f, std::span<const Rational> derivs) {
  check_derivs(f, derivs);
  const std::size_t w = f.stride();
  const std::vector<Rational> smom = cell_moments(f.m(), f.length());
  const std::vector<Rational> tmom = cell_moments(f.n(), f.length());
  Rational total;
  Rational cell_sum;
  Rational row;
  for (std::size_t a = 0; a < f.m(); ++a)
    for (std::size_t b = 0; b < f.n(); ++b) {
      const Rational& c = derivs[a * f.n() + b];
      if (c.is_zero()) continue;
      const auto table = f.cell(a, b);
      cell_sum = 0;
      for (std::size_t p = 0; p < w; ++p) {
        row = 0;
        for (std::size_t q = 0; q < w; ++q) {
          if (table[p * w + q].is_zero()) continue;
          row.add_product(table[p * w + q], tmom[b * w + q]);
        }
        if (!row.is_zero()) cell_sum.add_product(row, smom[a * w + p]);
      }
      total.add_product(cell_sum, c);
    }
  return total;
}

Rational sig_word_fast(const GridData& grid, const Word& word) {
  for (auto letter : word)
    if (letter >= grid.d()) throw ShapeError("word letter out of range for dimension " + std::to_string(grid.d()));
  if (word.empty()) return Rational(1);
  const CellDerivs derivs = cell_derivatives(grid);
  CellPolyField f = CellPolyField::constant_one(grid.m(), grid.n());
  for (std::size_t r = 0; r + 1 < word.size(); ++r) f = advance_letter(f, derivs.letter(word[r]));
  return total_integral(f, derivs.letter(word.back()));
}

namespace {

void fill_subtree(const CellDerivs& derivs, const CellPolyField& f, std::size_t remaining, std::size_t prefix,
                  SigTensor& out) {
  const std::size_t d = derivs.d;
  if (remaining == 1) {
    for (std::size_t i = 0; i < d; ++i) out[prefix * d + i] = total_integral(f, derivs.letter(i));
    return;
  }
  for (std::size_t i = 0; i < d; ++i)
    fill_subtree(derivs, advance_letter(f, derivs.letter(i)), remaining - 1, prefix * d + i, out);
}

}  // namespace

SigTensor sig_tensor_fast(const GridData& grid, std::size_t level) {
  SigTensor out(level, grid.d());
  if (level == 0) return out;
  const CellDerivs derivs = cell_derivatives(grid);
  fill_subtree(derivs, CellPolyField::constant_one(grid.m(), grid.n()), level, 0, out);
  return out;
}

Matrix sig_matrix_fast(const GridData& grid) { return sig_tensor_fast(grid, 2).as_matrix(); }

}  // namespace memsig
