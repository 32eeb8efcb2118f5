#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "memsig/matrix.hpp"
#include "memsig/rational.hpp"

namespace memsig {

/// A word over the alphabet {0, ..., d-1}. Letters are 0-based in code and
/// files; documentation writes them 1-based.
using Word = std::vector<std::size_t>;

/// Dense array with an arbitrary shape, row-major (last index fastest).
struct MultiArray {
  std::vector<std::size_t> shape;
  std::vector<Rational> entries;

  std::size_t flat_index(std::span<const std::size_t> index) const;
};

/// Level-k tensor over R^d, stored densely in row-major word order.
/// The level-0 tensor holds a single entry.
class SigTensor {
 public:
  SigTensor() : SigTensor(0, 1) {}
  /// Zero tensor (level 0 tensor is set to 1).
  SigTensor(std::size_t level, std::size_t dim);
  SigTensor(std::size_t level, std::size_t dim, std::vector<Rational> entries);

  static SigTensor from_function(std::size_t level, std::size_t dim,
                                 const std::function<Rational(const Word&)>& entry);
  static SigTensor from_matrix(const Matrix& m);

  std::size_t level() const { return level_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  std::span<const Rational> entries() const { return entries_; }
  const Rational& operator[](std::size_t flat) const { return entries_[flat]; }
  Rational& operator[](std::size_t flat) { return entries_[flat]; }
  const Rational& at(const Word& w) const { return entries_[flat_index(w)]; }
  Rational& at(const Word& w) { return entries_[flat_index(w)]; }

  std::size_t flat_index(const Word& w) const;
  Word word_of(std::size_t flat) const;

  /// Level-2 tensor viewed as a d x d matrix.
  Matrix as_matrix() const;

  friend bool operator==(const SigTensor&, const SigTensor&) = default;

 private:
  std::size_t level_;
  std::size_t dim_;
  std::vector<Rational> entries_;
};

/// d^k, with overflow checking.
std::size_t tensor_size(std::size_t dim, std::size_t level);

/// Tucker action: entry (i1..ik) = sum_j A[i1,j1]...A[ik,jk] T[j1..jk].
/// For k = 2 this is A T A^T.
SigTensor tucker_apply(const SigTensor& t, const Matrix& a);

/// Tucker action with one factor per mode; a null factor leaves that mode
/// untouched. Factor r must have cols equal to the current size of mode r.
MultiArray tucker_apply_modes(const MultiArray& t, std::span<const Matrix* const> factors);

MultiArray to_multi_array(const SigTensor& t);

/// Entrywise product of equally shaped tensors.
SigTensor hadamard(const SigTensor& a, const SigTensor& b);

}  // namespace memsig
