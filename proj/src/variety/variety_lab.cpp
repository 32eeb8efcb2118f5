#include "memsig/variety_lab.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "memsig/linalg.hpp"
#include "memsig/membrane_sig.hpp"

namespace memsig {

RankProfile core_rank_profile(const Matrix& core) {
  const SymSkew parts = sym_skew_split(core);
  return {rank(parts.sym), rank(parts.skew)};
}

RankProfile expected_rank_profile(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DomainError("orders must be >= 1");
  if (m % 2 == 1 && n % 2 == 0) std::swap(m, n);
  if (m % 2 == 0 && n % 2 == 0) return {m * n, m + n - 2};
  if (m % 2 == 0) return {m * (n - 1) + 1, m + n - 1};
  return {(m - 1) * (n - 1) + 1, m + n - 2};
}

std::string CongruenceBlock::label() const {
  if (kind == Kind::gamma) return "Gamma_" + std::to_string(k);
  return "H_" + std::to_string(2 * k) + (mu > 0 ? "(+1)" : "(-1)");
}

std::size_t CongruenceInvariants::dimension() const {
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  return total;
}

CongruenceInvariants make_invariants(std::vector<CongruenceBlock> blocks) {
  std::sort(blocks.begin(), blocks.end());
  return {std::move(blocks)};
}

CongruenceInvariants congruence_invariants(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("congruence invariants need a square matrix");
  if (det(m).is_zero()) throw DomainError("congruence invariants need a nonsingular matrix");
  const JordanStructure jordan = pm1_jordan_structure(cosquare(m));

  std::vector<CongruenceBlock> blocks;
  // (eigenvalue, size) -> count of blocks that must pair up
  std::vector<std::pair<JordanBlock, std::size_t>> pending;
  for (const auto& jb : jordan.blocks) {
    const bool odd = jb.size % 2 == 1;
    if ((jb.eigenvalue == 1 && odd) || (jb.eigenvalue == -1 && !odd)) {
      blocks.push_back(CongruenceBlock::gamma(jb.size));
      continue;
    }
    auto it = std::find_if(pending.begin(), pending.end(), [&](const auto& e) { return e.first == jb; });
    if (it == pending.end())
      pending.emplace_back(jb, 1);
    else
      ++it->second;
  }
  for (const auto& [jb, count] : pending) {
    if (count % 2 != 0)
      throw DomainError("cosquare has an unpaired Jordan block J_" + std::to_string(jb.size) + "(" +
                        std::to_string(jb.eigenvalue) + ")");
    for (std::size_t c = 0; c < count / 2; ++c) blocks.push_back(CongruenceBlock::h(jb.size, jb.eigenvalue));
  }
  return make_invariants(std::move(blocks));
}

bool congruent_check(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || !a.is_square() || !b.is_square()) return false;
  return congruence_invariants(a) == congruence_invariants(b);
}

CongruenceInvariants normal_form_formula(std::size_t m, std::size_t n) {
  if (m == 0 || n == 0) throw DomainError("orders must be >= 1");
  if (m % 2 == 1 && n % 2 == 0) std::swap(m, n);
  std::vector<CongruenceBlock> blocks;
  auto repeat = [&](CongruenceBlock b, std::size_t count) { blocks.insert(blocks.end(), count, b); };
  if (m % 2 == 0 && n % 2 == 0) {
    repeat(CongruenceBlock::gamma(3), 1);
    repeat(CongruenceBlock::h(2, 1), (m + n - 4) / 2);
    repeat(CongruenceBlock::gamma(1), (m - 2) * (n - 2) + 1);
  } else if (m % 2 == 0) {
    repeat(CongruenceBlock::gamma(2), 1);
    repeat(CongruenceBlock::h(2, 1), (n - 1) / 2);
    repeat(CongruenceBlock::h(1, -1), (m - 2) / 2);
    repeat(CongruenceBlock::gamma(1), (m - 2) * (n - 1));
  } else {
    repeat(CongruenceBlock::h(1, -1), (m + n - 2) / 2);
    repeat(CongruenceBlock::gamma(1), (m - 1) * (n - 1) + 1);
  }
  return make_invariants(std::move(blocks));
}

Matrix random_integer_matrix(std::size_t rows, std::size_t cols, long lo, long hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = Rational(dist(rng));
  return out;
}

std::size_t jacobian_rank(const SigTensor& core, const Matrix& b) {
  const std::size_t k = core.level();
  const std::size_t p = core.dim();
  const std::size_t d = b.rows();
  if (b.cols() != p) throw ShapeError("jacobian point must have as many columns as the core dimension");
  if (k == 0) return 0;

  const MultiArray base = to_multi_array(core);
  // partial[r]: core contracted with B on every mode except r.
  std::vector<MultiArray> partial;
  for (std::size_t r = 0; r < k; ++r) {
    std::vector<const Matrix*> factors(k, &b);
    factors[r] = nullptr;
    partial.push_back(tucker_apply_modes(base, factors));
  }

  const std::size_t cols = tensor_size(d, k);
  Matrix jac(d * p, cols);
  Word w(k, 0);
  std::vector<std::size_t> index(k);
  for (std::size_t col = 0; col < cols; ++col) {
    for (std::size_t r = 0; r < k; ++r) {
      std::copy(w.begin(), w.end(), index.begin());
      for (std::size_t x = 0; x < p; ++x) {
        index[r] = x;
        const Rational& v = partial[r].entries[partial[r].flat_index(index)];
        if (!v.is_zero()) jac(w[r] * p + x, col) += v;
      }
    }
    for (std::size_t r = k; r-- > 0;) {
      if (++w[r] < d) break;
      w[r] = 0;
    }
  }
  return rank(jac);
}

DimReport image_dimension(const SigTensor& core, std::size_t d, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("image_dimension needs at least one trial");
  DimReport report;
  report.d = d;
  report.level = core.level();
  report.ambient = tensor_size(d, core.level());
  report.trials = trials;
  std::mt19937_64 seeds(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Matrix b = random_integer_matrix(d, core.dim(), -1000, 1000, seeds());
    report.measured_dim = std::max(report.measured_dim, jacobian_rank(core, b));
  }
  return report;
}

DimReport membrane_dimension(std::size_t d, std::size_t m, std::size_t n, std::size_t level, std::size_t trials,
                             std::uint64_t seed) {
  DimReport report = image_dimension(core_tensor(CoreKind::axis, m, n, level), d, trials, seed);
  report.m = m;
  report.n = n;
  if (level == 2) report.formula_dim = dimension_formula(d, m, n);
  report.agreement = !report.formula_dim || *report.formula_dim == report.measured_dim;
  return report;
}

std::optional<std::size_t> dimension_formula(std::size_t d, std::size_t m, std::size_t n) {
  if (m == 0 || n == 0 || m * n > d) return std::nullopt;
  if (m % 2 == 1 && n % 2 == 0) std::swap(m, n);
  const long long D = static_cast<long long>(d);
  const long long M = static_cast<long long>(m);
  const long long N = static_cast<long long>(n);
  // Twice the value, to keep the half-integer coefficients exact.
  long long twice = 2 * D * M * N - M * M * N * N + 2 * M * M * (N - 1) + 2 * (M - 1) * N * N;
  if (m % 2 == 0 && n % 2 == 0)
    twice += -7 * M * N + 8 * (M + N) - 8;
  else if (m % 2 == 0)
    twice += -3 * M * N + 2 * (M + N);
  else
    twice += -7 * M * N + 6 * (M + N) - 4;
  return static_cast<std::size_t>(twice / 2);
}

namespace {

// Degree of the locus of symmetric d x d matrices of rank <= r.
Rational symmetric_rank_degree(long d, long r) {
  Rational out(1);
  for (long alpha = 0; alpha < d - r; ++alpha)
    out *= binomial(d + alpha, d - r - alpha) / binomial(2 * alpha + 1, alpha);
  return out;
}

// Degree of the locus of skew d x d matrices of rank <= 2s.
Rational skew_rank_degree(long d, long s) {
  Rational out(1);
  for (long alpha = 0; alpha <= d - 2 * s - 2; ++alpha)
    out *= binomial(d + alpha, d - 2 * s - 1 - alpha) / binomial(2 * alpha + 1, alpha);
  return out / pow(Rational(2), static_cast<unsigned>(d - 2 * s - 1));
}

}  // namespace

Rational degree_formula(std::size_t d, std::size_t m, std::size_t n) {
  if (m % 2 == 0 || n % 2 == 0) throw DomainError("degree formula needs m and n odd");
  if (m + n > d) throw DomainError("degree formula needs m + n <= d");
  const long D = static_cast<long>(d);
  const long sym_rank = static_cast<long>((m - 1) * (n - 1) + 1);
  const long skew_half = static_cast<long>((m + n - 2) / 2);
  const Rational deg = symmetric_rank_degree(D, sym_rank) * skew_rank_degree(D, skew_half);
  if (!deg.is_integer()) throw DomainError("degree formula produced a non-integer " + deg.str());
  return deg;
}

bool axis_core_det_check(std::size_t m, std::size_t n) {
  return det(core_matrix(CoreKind::axis, m, n)) ==
         Rational(1) / pow(Rational(4), static_cast<unsigned>(m * n));
}

RelationReport relation_checks(std::size_t d, std::size_t m, std::size_t n, std::size_t samples, std::uint64_t seed,
                               CoreKind kind) {
  RelationReport report;
  report.samples = samples;
  const bool case221 = d == 2 && m == 2 && n == 1;
  const bool case422 = d == 4 && m == 2 && n == 2;
  if (!case221 && !case422) {
    report.description = "no built-in relations";
    return report;
  }
  report.has_builtin = true;
  report.description = case221 ? "4 X11 X22 - X21^2 - 2 X21 X12 - X12^2 = 0"
                               : "Pf(X_skew) = 0 and det(X) det(C_sym) = det(C) det(X_sym)";
  const Matrix core = core_matrix(kind, m, n);
  const SymSkew core_parts = sym_skew_split(core);
  const Rational det_core = det(core);
  const Rational det_core_sym = det(core_parts.sym);
  std::mt19937_64 seeds(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Matrix a = random_integer_matrix(d, m * n, -1000, 1000, seeds());
    const Matrix x = a * core * a.transpose();
    bool ok;
    if (case221) {
      const Rational v = Rational(4) * x(0, 0) * x(1, 1) - x(1, 0) * x(1, 0) -
                         Rational(2) * x(1, 0) * x(0, 1) - x(0, 1) * x(0, 1);
      ok = v.is_zero();
    } else {
      const SymSkew parts = sym_skew_split(x);
      ok = pfaffian(parts.skew).is_zero() && det(x) * det_core_sym == det_core * det(parts.sym);
    }
    if (ok)
      ++report.passed;
    else if (!report.counterexample)
      report.counterexample = a;
  }
  return report;
}

}  // namespace memsig
