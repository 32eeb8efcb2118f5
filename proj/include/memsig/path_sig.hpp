#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "memsig/matrix.hpp"
#include "memsig/rational.hpp"
#include "memsig/tensor.hpp"

namespace memsig {

/// t -> u t.
struct LinearPath {
  std::vector<Rational> increment;
};

/// t -> (t, t^2, ..., t^degree).
struct MomentPath {
  std::size_t degree;
};

/// Piecewise linear path through the points sum_{j <= i} e_j at t = i/order.
struct AxisPath {
  std::size_t order;
};

/// Uniformly parametrized polyline through the given vertices (>= 2).
struct PiecewiseLinearPath {
  std::vector<std::vector<Rational>> vertices;
};

/// X_i(t) = sum_j coeffs(i, j) t^(j+1); no constant column.
struct PolynomialPath {
  Matrix coeffs;

  /// Accepts a d x (m+1) matrix whose column 0 holds constant terms; the
  /// constants are dropped (with a warning if any is nonzero).
  static PolynomialPath from_coefficients_with_constant(const Matrix& full);
};

using PathSpec = std::variant<LinearPath, MomentPath, AxisPath, PiecewiseLinearPath, PolynomialPath>;

/// The two dictionary families: moment (polynomial) and axis (piecewise linear).
enum class CoreKind { moment, axis };

const char* to_string(CoreKind kind);
CoreKind core_kind_from_string(std::string_view name);

/// X = transform * Dict^order, up to a constant; transform is d x order.
struct PathDictionary {
  Matrix transform;
  CoreKind kind;
  std::size_t order;
};

PathDictionary path_dictionary(const PathSpec& path);
std::size_t path_dimension(const PathSpec& path);

/// u^{(x)k} / k!.
SigTensor linear_path_sig(std::span<const Rational> increment, std::size_t level);

/// Closed form for the moment path. Letter l stands for the coordinate t^(l+1).
Rational moment_path_sig_entry(const Word& word);

/// Zero unless the word is nondecreasing; otherwise the number of distinct
/// rearrangements divided by k!.
Rational axis_path_sig_entry(const Word& word, std::size_t order);

Rational path_core_entry(CoreKind kind, const Word& word, std::size_t order);
SigTensor path_core_tensor(CoreKind kind, std::size_t order, std::size_t level);

/// Signature of a polyline via the axis dictionary and the Tucker action.
SigTensor pw_linear_path_sig(const std::vector<std::vector<Rational>>& vertices, std::size_t level);

/// Independent oracle: exact iterated integration of polynomial antiderivatives.
Rational poly_path_sig_oracle(const PolynomialPath& path, const Word& word);

SigTensor path_sig(const PathSpec& path, std::size_t level);

}  // namespace memsig
