#include "memsig/grid.hpp"

#include <string>

namespace memsig {

GridData::GridData(std::size_t d, std::size_t m, std::size_t n)
    : GridData(d, m, n, std::vector<Rational>(d * (m + 1) * (n + 1))) {}

GridData::GridData(std::size_t d, std::size_t m, std::size_t n, std::vector<Rational> values)
    : d_(d), m_(m), n_(n), values_(std::move(values)) {
  if (d == 0) throw ShapeError("grid dimension d must be >= 1");
  if (m == 0 || n == 0) throw ShapeError("grid orders m, n must be >= 1");
  if (values_.size() != d * (m + 1) * (n + 1))
    throw ShapeError("grid has " + std::to_string(values_.size()) + " values, expected " +
                     std::to_string(d * (m + 1) * (n + 1)));
}

GridData GridData::from_function(
    std::size_t d, std::size_t m, std::size_t n,
    const std::function<Rational(std::size_t, std::size_t, std::size_t)>& value) {
  GridData g(d, m, n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t a = 0; a <= m; ++a)
      for (std::size_t b = 0; b <= n; ++b) g.at(i, a, b) = value(i, a, b);
  return g;
}

Rational GridData::mixed_difference(std::size_t i, std::size_t a, std::size_t b) const {
  Rational v = at(i, a, b);
  v -= at(i, a - 1, b);
  v -= at(i, a, b - 1);
  v += at(i, a - 1, b - 1);
  return v;
}

GridData reduce_grid(const GridData& grid) {
  return GridData::from_function(grid.d(), grid.m(), grid.n(), [&](std::size_t i, std::size_t a, std::size_t b) {
    return grid.at(i, a, b) - grid.at(i, 0, b) - grid.at(i, a, 0) + grid.at(i, 0, 0);
  });
}

Matrix bilinear_decompose(const GridData& grid) {
  const VectorizationNu nu{grid.m(), grid.n()};
  Matrix a(grid.d(), nu.size());
  for (std::size_t i = 0; i < grid.d(); ++i)
    for (std::size_t ci = 0; ci < grid.m(); ++ci)
      for (std::size_t cj = 0; cj < grid.n(); ++cj) a(i, nu(ci, cj)) = grid.mixed_difference(i, ci + 1, cj + 1);
  return a;
}

GridData axis_node_grid(std::size_t m, std::size_t n) {
  const VectorizationNu nu{m, n};
  return GridData::from_function(nu.size(), m, n, [&](std::size_t dim, std::size_t a, std::size_t b) {
    const auto [i, j] = nu.split(dim);
    return Rational(i < a && j < b ? 1 : 0);
  });
}

Rational axis_membrane_eval(std::size_t m, std::size_t n, std::size_t i, std::size_t j,
                            const Rational& s, const Rational& t) {
  if (i >= m || j >= n) throw ShapeError("axis membrane coordinate out of range");
  const Rational lo_s(static_cast<long>(i), static_cast<long>(m));
  const Rational hi_s(static_cast<long>(i + 1), static_cast<long>(m));
  const Rational lo_t(static_cast<long>(j), static_cast<long>(n));
  const Rational hi_t(static_cast<long>(j + 1), static_cast<long>(n));
  const Rational mr(static_cast<long>(m));
  const Rational nr(static_cast<long>(n));
  const Rational ir(static_cast<long>(i));
  const Rational jr(static_cast<long>(j));
  if (s <= lo_s || t <= lo_t) return Rational(0);
  const bool s_inside = s <= hi_s;
  const bool t_inside = t <= hi_t;
  if (s_inside && t_inside) return mr * nr * s * t - mr * jr * s - nr * ir * t + ir * jr;
  if (!s_inside && t_inside) return nr * t - jr;
  if (s_inside && !t_inside) return mr * s - ir;
  return Rational(1);
}

}  // namespace memsig
