#include <doctest.h>

#include <random>

#include "core3_table.hpp"
#include "memsig/linalg.hpp"
#include "memsig/log.hpp"
#include "memsig/membrane_sig.hpp"
#include "oracles.hpp"
#include "tables.hpp"

using namespace memsig;

namespace {

MembraneSpec bilinear(const GridData& g) { return MembraneSpec{PiecewiseBilinearMembrane{g}}; }

MembraneSpec polynomial(const Matrix& a, std::size_t m, std::size_t n) {
  return MembraneSpec{PolynomialMembrane{a, m, n}};
}

}  // namespace

TEST_CASE("product_sig_entry") {
  const WordEntryFn mom = [](const Word& w) { return moment_path_sig_entry(w); };
  CHECK(product_sig_entry(mom, mom, {{0, 0}, {1, 1}}) == Rational(4, 9));
  CHECK(product_sig_entry(mom, mom, {}) == Rational(1));
  CHECK(product_sig_entry(mom, mom, {{0, 0}, {0, 0}, {0, 0}}) == Rational(1, 36));
}

TEST_CASE("moment core (2,2) level 2") {
  const Matrix c = core_matrix(CoreKind::moment, 2, 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(c(i, j) == Rational::parse(kMomentCore2[i][j]));
}

TEST_CASE("moment core (2,2) level 3") {
  const SigTensor c3 = core_tensor(CoreKind::moment, 2, 2, 3);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) CHECK(c3.at({a, b, c}) == Rational::parse(moment_core3_entry(a, b, c)));
  CHECK(c3.at({3, 0, 0}) == Rational(1, 144));
}

TEST_CASE("axis core case analysis") {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const Matrix c = core_matrix(CoreKind::axis, m, n);
      const VectorizationNu nu{m, n};
      for (std::size_t x = 0; x < nu.size(); ++x)
        for (std::size_t y = 0; y < nu.size(); ++y) {
          const auto [i, j] = nu.split(x);
          const auto [k, l] = nu.split(y);
          Rational expected;
          if (i < k && j < l)
            expected = 1;
          else if ((i == k && j < l) || (i < k && j == l))
            expected = Rational(1, 2);
          else if (i == k && j == l)
            expected = Rational(1, 4);
          CHECK(c(x, y) == expected);
        }
    }
}

TEST_CASE("level-2 cores factor as Kronecker products") {
  for (auto kind : {CoreKind::moment, CoreKind::axis})
    for (std::size_t m = 1; m <= 5; ++m)
      for (std::size_t n = 1; n <= 5; ++n)
        CHECK(core_matrix(kind, m, n) ==
              kron(path_core_tensor(kind, m, 2).as_matrix(), path_core_tensor(kind, n, 2).as_matrix()));
}

TEST_CASE("moment core equals two-parameter iterated integration") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= 3; ++k) {
        const SigTensor c = core_tensor(CoreKind::moment, m, n, k);
        for (std::size_t f = 0; f < c.size(); ++f) CHECK(c[f] == oracle::moment_membrane_entry(n, c.word_of(f)));
      }
}

TEST_CASE("axis core equals segment-wise integration of the two axis paths") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n)
      for (std::size_t k = 0; k <= 3; ++k) {
        const SigTensor c = core_tensor(CoreKind::axis, m, n, k);
        for (std::size_t f = 0; f < c.size(); ++f) {
          Word ws, wt;
          for (auto x : c.word_of(f)) {
            ws.push_back(x / n);
            wt.push_back(x % n);
          }
          CHECK(c[f] == oracle::axis_path_entry(m, ws) * oracle::axis_path_entry(n, wt));
        }
      }
}

TEST_CASE("moment core (2,2) level 2 against Monte Carlo integration") {
  // Sorted uniform pairs sample each simplex with density 2, so the integral
  // over the product of simplices is E[f] / 4.
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  constexpr long kSamples = 20'000'000;
  std::array<double, 16> sum{};
  for (long r = 0; r < kSamples; ++r) {
    double s1 = uniform(rng), s2 = uniform(rng), t1 = uniform(rng), t2 = uniform(rng);
    if (s1 > s2) std::swap(s1, s2);
    if (t1 > t2) std::swap(t1, t2);
    // d12 of s^(i+1) t^(j+1) at letter 2i + j.
    const std::array<double, 4> first{1.0, 2 * t1, 2 * s1, 4 * s1 * t1};
    const std::array<double, 4> second{1.0, 2 * t2, 2 * s2, 4 * s2 * t2};
    for (std::size_t x = 0; x < 4; ++x)
      for (std::size_t y = 0; y < 4; ++y) sum[x * 4 + y] += first[x] * second[y];
  }
  const Matrix c = core_matrix(CoreKind::moment, 2, 2);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      const double estimate = sum[x * 4 + y] / kSamples / 4.0;
      const double exact = c(x, y).to_double();
      CHECK(std::abs(estimate - exact) / exact < 1e-3);
    }
}

TEST_CASE("reduce_grid") {
  std::mt19937_64 rng(37);
  const GridData g = oracle::random_grid(rng, 2, 3, 3);
  const GridData r = reduce_grid(g);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t a = 0; a <= 3; ++a) CHECK(r.at(i, a, 0).is_zero());
    for (std::size_t b = 0; b <= 3; ++b) CHECK(r.at(i, 0, b).is_zero());
  }
  CHECK(reduce_grid(r) == r);
  const GridData constant = GridData::from_function(2, 2, 2, [](auto, auto, auto) { return Rational(7, 3); });
  CHECK(reduce_grid(constant) == GridData(2, 2, 2));
  for (std::size_t k = 1; k <= 3; ++k) CHECK(sig_via_congruence(bilinear(r), k) == sig_via_congruence(bilinear(g), k));
}

TEST_CASE("bilinear_decompose") {
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 1; n <= 3; ++n) CHECK(bilinear_decompose(axis_node_grid(m, n)) == Matrix::identity(m * n));

  GridData single(3, 1, 1);
  const std::vector<Rational> u{2, Rational(-1, 3), 5};
  for (std::size_t i = 0; i < 3; ++i) single.at(i, 1, 1) = u[i];
  CHECK(bilinear_decompose(single) == Matrix::column(u));

  std::mt19937_64 rng(41);
  const GridData g = oracle::random_grid(rng, 2, 4, 3);
  const Matrix a = bilinear_decompose(g);
  const GridData red = reduce_grid(g);
  const VectorizationNu nu{4, 3};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t p = 0; p <= 4; ++p)
      for (std::size_t q = 0; q <= 3; ++q) {
        Rational cumulative;
        for (std::size_t ci = 0; ci < p; ++ci)
          for (std::size_t cj = 0; cj < q; ++cj) cumulative += a(i, nu(ci, cj));
        CHECK(cumulative == red.at(i, p, q));
      }
}

TEST_CASE("axis_membrane_eval") {
  // 1-based cell (2, 1) of a 3 x 2 grid.
  CHECK(axis_membrane_eval(3, 2, 1, 0, Rational(1, 2), Rational(1, 4)) == Rational(1, 4));
  CHECK(axis_membrane_eval(3, 2, 1, 0, Rational(1, 3), Rational(1, 2)) == Rational(0));
  CHECK(axis_membrane_eval(3, 2, 1, 0, Rational(9, 10), Rational(3, 4)) == Rational(1));
  CHECK(axis_membrane_eval(3, 2, 1, 0, Rational(9, 10), Rational(1, 4)) == Rational(1, 2));
  CHECK(axis_membrane_eval(3, 2, 1, 0, Rational(1, 2), Rational(3, 4)) == Rational(1, 2));
  CHECK_THROWS(axis_membrane_eval(3, 2, 3, 0, Rational(0), Rational(0)));

  // Matches the bilinear interpolant of the axis node grid at random points.
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> num(0, 60);
  const std::size_t m = 3, n = 4;
  const GridData nodes = axis_node_grid(m, n);
  const VectorizationNu nu{m, n};
  for (int t = 0; t < 50; ++t) {
    const Rational s(num(rng), 60), tt(num(rng), 60);
    const std::size_t a = oracle::cell_of(s, m);
    const std::size_t b = oracle::cell_of(tt, n);
    const Rational x = s * Rational(static_cast<long>(m)) - Rational(a);
    const Rational y = tt * Rational(static_cast<long>(n)) - Rational(b);
    for (std::size_t dim = 0; dim < nu.size(); ++dim) {
      const Rational interp = (Rational(1) - x) * (Rational(1) - y) * nodes.at(dim, a, b) +
                              x * (Rational(1) - y) * nodes.at(dim, a + 1, b) +
                              (Rational(1) - x) * y * nodes.at(dim, a, b + 1) + x * y * nodes.at(dim, a + 1, b + 1);
      const auto [i, j] = nu.split(dim);
      CHECK(axis_membrane_eval(m, n, i, j, s, tt) == interp);
    }
  }
}

TEST_CASE("sig_via_congruence") {
  const Matrix a{{1, -1, 1, 1}, {1, 1, 0, -1}};
  CHECK(sig_via_congruence(polynomial(a, 2, 2), 2).as_matrix()(0, 0) == Rational(10, 9));

  // The displayed cubic for sigma^(3)(X)_{1,1,1}.
  auto cubic = [](const Rational& a1, const Rational& a2, const Rational& a3, const Rational& a4) {
    return Rational(1, 36) * a1 * a1 * a1 + Rational(1, 12) * a1 * a1 * a2 + Rational(1, 12) * a1 * a1 * a3 +
           Rational(7, 72) * a1 * a1 * a4 + Rational(1, 12) * a1 * a2 * a2 + Rational(11, 72) * a1 * a2 * a3 +
           Rational(13, 72) * a1 * a2 * a4 + Rational(1, 12) * a1 * a3 * a3 + Rational(13, 72) * a1 * a3 * a4 +
           Rational(89, 900) * a1 * a4 * a4 + Rational(1, 36) * a2 * a2 * a2 + Rational(5, 72) * a2 * a2 * a3 +
           Rational(1, 12) * a2 * a2 * a4 + Rational(5, 72) * a2 * a3 * a3 + Rational(34, 225) * a2 * a3 * a4 +
           Rational(1, 12) * a2 * a4 * a4 + Rational(1, 36) * a3 * a3 * a3 + Rational(1, 12) * a3 * a3 * a4 +
           Rational(1, 12) * a3 * a4 * a4 + Rational(1, 36) * a4 * a4 * a4;
  };
  CHECK(sig_via_congruence(polynomial(a, 2, 2), 3).at({0, 0, 0}) == cubic(a(0, 0), a(0, 1), a(0, 2), a(0, 3)));
  std::mt19937_64 rng(47);
  const Matrix r = oracle::random_matrix(rng, 1, 4);
  CHECK(sig_via_congruence(polynomial(r, 2, 2), 3)[0] == cubic(r(0, 0), r(0, 1), r(0, 2), r(0, 3)));

  GridData single(3, 1, 1);
  const std::vector<Rational> u{2, Rational(-1, 3), 5};
  for (std::size_t i = 0; i < 3; ++i) single.at(i, 1, 1) = u[i];
  for (std::size_t k = 0; k <= 3; ++k) {
    const SigTensor t = sig_via_congruence(bilinear(single), k);
    const Rational kf = factorial(static_cast<unsigned>(k));
    for (std::size_t f = 0; f < t.size(); ++f) {
      Rational expected(1);
      for (auto letter : t.word_of(f)) expected *= u[letter];
      CHECK(t[f] == expected / (kf * kf));
    }
  }
}

TEST_CASE("polynomial membranes from sparse terms") {
  std::vector<std::string> seen;
  auto previous = set_warning_sink([&](std::string_view msg) { seen.emplace_back(msg); });
  const std::vector<PolynomialTerm> terms{
      {1, 1, 0, Rational(2)}, {2, 1, 1, Rational(-1, 2)}, {0, 2, 0, Rational(9)}, {1, 0, 1, Rational(4)}, {1, 1, 0, Rational(1)}};
  const PolynomialMembrane p = PolynomialMembrane::from_terms(2, 2, 2, terms);
  CHECK(p.coeffs == Matrix{{3, 0, 0, 0}, {0, 0, Rational(-1, 2), 0}});
  CHECK(seen.size() == 1);
  set_warning_sink(previous);
  const std::vector<PolynomialTerm> bad{{3, 1, 0, Rational(1)}};
  CHECK_THROWS_AS(PolynomialMembrane::from_terms(2, 2, 2, bad), ShapeError);
}

TEST_CASE("equivariance") {
  std::mt19937_64 rng(53);
  const GridData g = oracle::random_grid(rng, 3, 2, 3);
  const Matrix b = oracle::random_matrix(rng, 2, 3);
  const MembraneSpec t{TransformedMembrane{b, std::make_shared<const MembraneSpec>(bilinear(g))}};
  for (std::size_t k = 0; k <= 3; ++k) CHECK(sig_via_congruence(t, k) == tucker_apply(sig_via_congruence(bilinear(g), k), b));
  const MembraneSpec bad{TransformedMembrane{Matrix(2, 2), std::make_shared<const MembraneSpec>(bilinear(g))}};
  CHECK_THROWS_AS(sig_via_congruence(bad, 2), ShapeError);
}

TEST_CASE("scaling: a one-dimensional factor only rescales the signature") {
  const Rational c(-5, 3);
  const PathSpec y = PiecewiseLinearPath{{{0, 0}, {1, 2}, {-1, 3}, {2, 2}}};
  const MembraneSpec x{ProductMembrane{LinearPath{{c}}, y}};
  for (std::size_t k = 0; k <= 3; ++k) {
    const SigTensor lhs = sig_via_congruence(x, k);
    const SigTensor rhs = path_sig(y, k);
    const Rational factor = pow(c, static_cast<unsigned>(k)) / factorial(static_cast<unsigned>(k));
    REQUIRE(lhs.size() == rhs.size());
    for (std::size_t f = 0; f < lhs.size(); ++f) CHECK(lhs[f] == factor * rhs[f]);
  }
}

TEST_CASE("product membranes of dictionary paths") {
  const MembraneSpec mm{ProductMembrane{MomentPath{2}, MomentPath{3}}};
  CHECK(sig_via_congruence(mm, 3) == core_tensor(CoreKind::moment, 2, 3, 3));
  const MembraneSpec ma{ProductMembrane{MomentPath{2}, AxisPath{2}}};
  CHECK(sig_via_congruence(ma, 2) == core_tensor(CoreKind::moment, 2, CoreKind::axis, 2, 2));
}

TEST_CASE("monotone embedding by zero padding") {
  std::mt19937_64 rng(59);
  for (auto kind : {CoreKind::moment, CoreKind::axis}) {
    const Matrix a = oracle::random_matrix(rng, 3, 4);
    const VectorizationNu small{2, 2}, big{3, 4};
    Matrix padded(3, big.size());
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t x = 0; x < small.size(); ++x) {
        const auto [i, j] = small.split(x);
        padded(r, big(i, j)) = a(r, x);
      }
    CHECK(tucker_apply(core_tensor(kind, 3, 4, 3), padded) == tucker_apply(core_tensor(kind, 2, 2, 3), a));
  }
}

TEST_CASE("hadamard") {
  std::mt19937_64 rng(61);
  const SigTensor t = SigTensor::from_function(2, 3, [&](const Word&) { return oracle::random_matrix(rng, 1, 1)(0, 0); });
  CHECK(hadamard_sig(t, SigTensor(2, 3, std::vector<Rational>(9, Rational(1)))) == t);
  CHECK_THROWS_AS(hadamard_sig(t, SigTensor(2, 2)), ShapeError);

  const PathSpec x = PiecewiseLinearPath{{{0, 0}, {1, 2}, {3, -1}}};
  const PathSpec y = PiecewiseLinearPath{{{1, 1}, {0, 2}, {2, 2}, {-1, 0}}};
  const MembraneSpec product{ProductMembrane{x, y}};
  const MembraneSpec mu{TransformedMembrane{hadamard_map(2), std::make_shared<const MembraneSpec>(product)}};
  const WordEntryFn sx = [&](const Word& w) { return path_sig(x, w.size()).at(w); };
  const WordEntryFn sy = [&](const Word& w) { return path_sig(y, w.size()).at(w); };
  for (std::size_t k = 1; k <= 3; ++k) {
    const SigTensor expected = hadamard_sig(path_sig(x, k), path_sig(y, k));
    CHECK(sig_via_congruence(mu, k) == expected);
    for (std::size_t f = 0; f < expected.size(); ++f) {
      TupleWord diagonal;
      for (auto letter : expected.word_of(f)) diagonal.emplace_back(letter, letter);
      CHECK(product_sig_entry(sx, sy, diagonal) == expected[f]);
    }
  }
}

TEST_CASE("streaming congruence equals the dense product") {
  std::mt19937_64 rng(67);
  for (int t = 0; t < 10; ++t) {
    const std::size_t m = 1 + rng() % 4, n = 1 + rng() % 4, d = 1 + rng() % 3;
    const Matrix a = oracle::random_matrix(rng, d, m * n, 9, 5);
    for (auto kind : {CoreKind::moment, CoreKind::axis})
      CHECK(sig_matrix_congruence_streaming(a, kind, m, n) == a * core_matrix(kind, m, n) * a.transpose());
  }
  // Entries too large for the machine-integer kernel fall back to rationals.
  Matrix big(2, 4);
  big(0, 0) = Rational::parse("123456789012345678901234567890");
  big(1, 3) = Rational::parse("-1/98765432109876543210");
  big(1, 1) = 3;
  CHECK(sig_matrix_congruence_streaming(big, CoreKind::axis, 2, 2) ==
        big * core_matrix(CoreKind::axis, 2, 2) * big.transpose());
  CHECK_THROWS_AS(sig_matrix_congruence_streaming(big, CoreKind::axis, 3, 2), ShapeError);
}
