#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "memsig/matrix.hpp"
#include "memsig/path_sig.hpp"
#include "memsig/rational.hpp"
#include "memsig/tensor.hpp"

namespace memsig {

struct RankProfile {
  std::size_t rank_sym;
  std::size_t rank_skew;

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

/// Exact ranks of the symmetric and skew-symmetric parts.
RankProfile core_rank_profile(const Matrix& core);

/// The ranks of the axis core C_{m,n} by parity of (m, n).
RankProfile expected_rank_profile(std::size_t m, std::size_t n);

/// Gamma_k, or H_{2k}(mu) with half size k.
struct CongruenceBlock {
  enum class Kind { gamma, h };
  Kind kind;
  std::size_t k;
  int mu = 0;  // +1 or -1 for H blocks, 0 for Gamma

  static CongruenceBlock gamma(std::size_t k) { return {Kind::gamma, k, 0}; }
  static CongruenceBlock h(std::size_t half, int mu) { return {Kind::h, half, mu}; }

  std::size_t size() const { return kind == Kind::gamma ? k : 2 * k; }
  /// "Gamma_3", "H_4(+1)".
  std::string label() const;

  friend auto operator<=>(const CongruenceBlock&, const CongruenceBlock&) = default;
};

struct CongruenceInvariants {
  /// Canonically sorted.
  std::vector<CongruenceBlock> blocks;

  std::size_t dimension() const;
  friend bool operator==(const CongruenceInvariants&, const CongruenceInvariants&) = default;
};

/// Sorts blocks into the canonical order.
CongruenceInvariants make_invariants(std::vector<CongruenceBlock> blocks);

/// Canonical congruence blocks of a nonsingular matrix whose cosquare has
/// spectrum in {+1, -1}. Throws DomainError otherwise.
CongruenceInvariants congruence_invariants(const Matrix& m);

bool congruent_check(const Matrix& a, const Matrix& b);

/// The block decomposition of the axis core C_{m,n} by parity of (m, n).
CongruenceInvariants normal_form_formula(std::size_t m, std::size_t n);

struct DimReport {
  std::size_t d = 0;
  std::size_t m = 0;  // 0 when the core is not a membrane core
  std::size_t n = 0;
  std::size_t level = 0;
  std::size_t measured_dim = 0;
  std::optional<std::size_t> formula_dim;
  std::size_t ambient = 0;
  std::size_t trials = 0;
  bool agreement = true;  // measured == formula whenever the formula applies
};

/// Rank of the derivative of A -> tucker_apply(core, A) at B (d x p), as a
/// (d p) x d^k matrix.
std::size_t jacobian_rank(const SigTensor& core, const Matrix& b);

/// Max of jacobian_rank over random integer points with entries in
/// [-1000, 1000].
DimReport image_dimension(const SigTensor& core, std::size_t d, std::size_t trials, std::uint64_t seed);

/// image_dimension for the axis membrane core of order (m, n), with the
/// closed formula filled in where it applies (level 2, mn <= d).
DimReport membrane_dimension(std::size_t d, std::size_t m, std::size_t n, std::size_t level, std::size_t trials,
                             std::uint64_t seed);

/// Closed form for mn <= d; nullopt otherwise.
std::optional<std::size_t> dimension_formula(std::size_t d, std::size_t m, std::size_t n);

/// Degree of M_{d,m,n} for m, n odd and m + n <= d. Throws DomainError outside
/// that range.
Rational degree_formula(std::size_t d, std::size_t m, std::size_t n);

bool axis_core_det_check(std::size_t m, std::size_t n);

struct RelationReport {
  bool has_builtin = false;
  std::string description;
  std::size_t samples = 0;
  std::size_t passed = 0;
  std::optional<Matrix> counterexample;

  bool ok() const { return !has_builtin || passed == samples; }
};

/// Evaluates the known relations of M_{d,m,n} on random points A C A^T.
/// Built in for (2,2,1) and (4,2,2).
RelationReport relation_checks(std::size_t d, std::size_t m, std::size_t n, std::size_t samples, std::uint64_t seed,
                               CoreKind kind = CoreKind::axis);

/// Random integer matrix with entries uniform in [lo, hi].
Matrix random_integer_matrix(std::size_t rows, std::size_t cols, long lo, long hi, std::uint64_t seed);

}  // namespace memsig
