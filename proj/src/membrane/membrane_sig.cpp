#include "memsig/membrane_sig.hpp"

#include <cstdint>
#include <string>

#include "memsig/log.hpp"

namespace memsig {

PolynomialMembrane PolynomialMembrane::from_terms(std::size_t d, std::size_t m, std::size_t n,
                                                  std::span<const PolynomialTerm> terms) {
  if (d == 0 || m == 0 || n == 0) throw ShapeError("polynomial membrane needs d, m, n >= 1");
  const VectorizationNu nu{m, n};
  Matrix coeffs(d, nu.size());
  std::size_t dropped = 0;
  for (const auto& term : terms) {
    if (term.dim >= d) throw ShapeError("polynomial term dimension out of range");
    if (term.s_degree > m || term.t_degree > n) throw ShapeError("polynomial term exceeds order (m, n)");
    if (term.s_degree == 0 || term.t_degree == 0) {
      ++dropped;
      continue;
    }
    coeffs(term.dim, nu(term.s_degree - 1, term.t_degree - 1)) += term.coeff;
  }
  if (dropped > 0)
    warn("polynomial membrane: dropped " + std::to_string(dropped) +
         " term(s) of bidegree (0, *) or (*, 0); they do not change the signature");
  return PolynomialMembrane{std::move(coeffs), m, n};
}

MembraneDictionary resolve(const MembraneSpec& spec) {
  struct Visitor {
    MembraneDictionary operator()(const ProductMembrane& p) const {
      PathDictionary x = path_dictionary(p.x);
      PathDictionary y = path_dictionary(p.y);
      return {kron(x.transform, y.transform), x.kind, x.order, y.kind, y.order};
    }
    MembraneDictionary operator()(const PolynomialMembrane& p) const {
      if (p.m == 0 || p.n == 0 || p.coeffs.cols() != p.m * p.n || p.coeffs.rows() == 0)
        throw ShapeError("polynomial membrane coefficients must be d x mn");
      return {p.coeffs, CoreKind::moment, p.m, CoreKind::moment, p.n};
    }
    MembraneDictionary operator()(const PiecewiseBilinearMembrane& p) const {
      return {bilinear_decompose(p.grid), CoreKind::axis, p.grid.m(), CoreKind::axis, p.grid.n()};
    }
    MembraneDictionary operator()(const TransformedMembrane& t) const {
      if (!t.base) throw DomainError("transformed membrane without a base");
      MembraneDictionary base = resolve(*t.base);
      if (t.transform.cols() != base.transform.rows())
        throw ShapeError("transform has " + std::to_string(t.transform.cols()) +
                         " columns, base membrane has dimension " + std::to_string(base.transform.rows()));
      base.transform = t.transform * base.transform;
      return base;
    }
  };
  return std::visit(Visitor{}, spec.node);
}

Rational product_sig_entry(const WordEntryFn& sig_x, const WordEntryFn& sig_y, const TupleWord& word) {
  Word left;
  Word right;
  left.reserve(word.size());
  right.reserve(word.size());
  for (const auto& [i, j] : word) {
    left.push_back(i);
    right.push_back(j);
  }
  return sig_x(left) * sig_y(right);
}

SigTensor core_tensor(CoreKind kind_s, std::size_t m, CoreKind kind_t, std::size_t n, std::size_t level) {
  const SigTensor left = path_core_tensor(kind_s, m, level);
  const SigTensor right = path_core_tensor(kind_t, n, level);
  const VectorizationNu nu{m, n};
  return SigTensor::from_function(level, nu.size(), [&](const Word& w) {
    std::size_t li = 0;
    std::size_t ri = 0;
    for (auto letter : w) {
      const auto [i, j] = nu.split(letter);
      li = li * m + i;
      ri = ri * n + j;
    }
    return left[li] * right[ri];
  });
}

Matrix core_matrix(CoreKind kind, std::size_t m, std::size_t n) { return core_tensor(kind, m, n, 2).as_matrix(); }

SigTensor sig_via_congruence(const MembraneSpec& spec, std::size_t level) {
  const MembraneDictionary dict = resolve(spec);
  return tucker_apply(core_tensor(dict.kind_s, dict.m, dict.kind_t, dict.n, level), dict.transform);
}

namespace {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;

mpz_class to_mpz(i128 v) {
  const bool negative = v < 0;
  u128 u = negative ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & 0xffffffffffffffffULL));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

// Returns false if A times the lcm of its denominators does not fit the
// 62-bit budget of the integer kernel.
bool integer_scaled(const Matrix& a, std::vector<std::int64_t>& scaled, mpz_class& lcm) {
  lcm = 1;
  for (const auto& e : a.entries()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.denominator().get_mpz_t());
  scaled.resize(a.entries().size());
  const mpz_class limit = mpz_class(1) << 62;
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    const Rational& e = a.entries()[k];
    const mpz_class v = e.numerator() * (lcm / e.denominator());
    if (abs(v) >= limit) return false;
    scaled[k] = v.get_si();
  }
  return true;
}

Matrix axis_congruence_integer(const std::vector<std::int64_t>& a, std::size_t d, const mpz_class& lcm,
                               std::size_t m, std::size_t n) {
  const std::size_t p = m * n;
  // T = A' (4C); 4C[(i,j),(i',j')] = w(i,i') w(j,j') with w = 2 (<), 1 (=), 0 (>)
  std::vector<i128> t(d * p, 0);
  for (std::size_t r = 0; r < d; ++r) {
    i128* trow = &t[r * p];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const i128 v = a[r * p + i * n + j];
        if (v == 0) continue;
        for (std::size_t i2 = i; i2 < m; ++i2) {
          const i128 vs = i2 == i ? v : 2 * v;
          i128* block = trow + i2 * n;
          block[j] += vs;
          const i128 vst = 2 * vs;
          for (std::size_t j2 = j + 1; j2 < n; ++j2) block[j2] += vst;
        }
      }
  }
  Matrix s(d, d);
  const mpz_class denom = 4 * lcm * lcm;
  for (std::size_t p1 = 0; p1 < d; ++p1)
    for (std::size_t q = 0; q < d; ++q) {
      mpz_class acc = 0;
      mpz_class term;
      for (std::size_t y = 0; y < p; ++y) {
        const std::int64_t aq = a[q * p + y];
        if (aq == 0 || t[p1 * p + y] == 0) continue;
        term = to_mpz(t[p1 * p + y]);
        term *= static_cast<long>(aq);
        acc += term;
      }
      s(p1, q) = Rational(acc, denom);
    }
  return s;
}

}  // namespace

Matrix sig_matrix_congruence_streaming(const Matrix& a, CoreKind kind, std::size_t m, std::size_t n) {
  const VectorizationNu nu{m, n};
  if (a.cols() != nu.size())
    throw ShapeError("congruence: A has " + std::to_string(a.cols()) + " columns, core has size " +
                     std::to_string(nu.size()));
  if (kind == CoreKind::axis) {
    std::vector<std::int64_t> scaled;
    mpz_class lcm;
    if (integer_scaled(a, scaled, lcm)) return axis_congruence_integer(scaled, a.rows(), lcm, m, n);
  }
  const Matrix cs = path_core_tensor(kind, m, 2).as_matrix();
  const Matrix ct = path_core_tensor(kind, n, 2).as_matrix();
  Matrix ac(a.rows(), nu.size());
  Rational w;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t x = 0; x < nu.size(); ++x) {
      const Rational& arx = a(r, x);
      if (arx.is_zero()) continue;
      const auto [i, j] = nu.split(x);
      for (std::size_t y = 0; y < nu.size(); ++y) {
        const auto [i2, j2] = nu.split(y);
        if (cs(i, i2).is_zero() || ct(j, j2).is_zero()) continue;
        w = cs(i, i2) * ct(j, j2);
        ac(r, y).add_product(arx, w);
      }
    }
  return ac * a.transpose();
}

SigTensor hadamard_sig(const SigTensor& sig_x, const SigTensor& sig_y) { return hadamard(sig_x, sig_y); }

Matrix hadamard_map(std::size_t d) {
  Matrix mu(d, d * d);
  for (std::size_t i = 0; i < d; ++i) mu(i, i * d + i) = 1;
  return mu;
}

}  // namespace memsig
