#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "memsig/grid.hpp"
#include "memsig/matrix.hpp"
#include "memsig/path_sig.hpp"
#include "memsig/tensor.hpp"

namespace memsig {

struct MembraneSpec;

/// (s, t) -> X(s) (x) Y(t), vectorized with nu.
struct ProductMembrane {
  PathSpec x;
  PathSpec y;
};

/// One term coeff * s^s_degree * t^t_degree in coordinate dim.
struct PolynomialTerm {
  std::size_t s_degree;
  std::size_t t_degree;
  std::size_t dim;
  Rational coeff;
};

/// X = coeffs * Mom^{m,n}; column nu(i, j) holds the coefficient of s^(i+1) t^(j+1).
struct PolynomialMembrane {
  Matrix coeffs;
  std::size_t m;
  std::size_t n;

  /// Sparse construction. Terms with s_degree == 0 or t_degree == 0 do not
  /// affect the signature and are dropped with a warning.
  static PolynomialMembrane from_terms(std::size_t d, std::size_t m, std::size_t n,
                                       std::span<const PolynomialTerm> terms);
};

struct PiecewiseBilinearMembrane {
  GridData grid;
};

/// transform o base.
struct TransformedMembrane {
  Matrix transform;
  std::shared_ptr<const MembraneSpec> base;
};

struct MembraneSpec {
  std::variant<ProductMembrane, PolynomialMembrane, PiecewiseBilinearMembrane, TransformedMembrane> node;
};

/// sigma(X) = tucker(core, transform), with the core a product of two path
/// dictionaries of orders m (in s) and n (in t).
struct MembraneDictionary {
  Matrix transform;  // d x mn
  CoreKind kind_s;
  std::size_t m;
  CoreKind kind_t;
  std::size_t n;
};

MembraneDictionary resolve(const MembraneSpec& spec);

using WordEntryFn = std::function<Rational(const Word&)>;
using TupleWord = std::vector<std::pair<std::size_t, std::size_t>>;

/// <sigma(X), i-word> * <sigma(Y), j-word>.
Rational product_sig_entry(const WordEntryFn& sig_x, const WordEntryFn& sig_y, const TupleWord& word);

/// Signature tensor of Dict_s^m (x) Dict_t^n at the given level, dimension mn.
SigTensor core_tensor(CoreKind kind_s, std::size_t m, CoreKind kind_t, std::size_t n, std::size_t level);
inline SigTensor core_tensor(CoreKind kind, std::size_t m, std::size_t n, std::size_t level) {
  return core_tensor(kind, m, kind, n, level);
}
/// Level-2 core as a matrix.
Matrix core_matrix(CoreKind kind, std::size_t m, std::size_t n);

/// tucker_apply(core_tensor(...), A) for the resolved dictionary.
SigTensor sig_via_congruence(const MembraneSpec& spec, std::size_t level);

/// A C A^T for the level-2 core of (kind, m, n) without materializing C.
/// Axis cores with A clearing to machine-size integers run on an exact
/// 128-bit accumulator; everything else falls back to rationals.
Matrix sig_matrix_congruence_streaming(const Matrix& a, CoreKind kind, std::size_t m, std::size_t n);

SigTensor hadamard_sig(const SigTensor& sig_x, const SigTensor& sig_y);

/// The componentwise product map R^d (x) R^d -> R^d as a d x d^2 matrix.
Matrix hadamard_map(std::size_t d);

}  // namespace memsig
