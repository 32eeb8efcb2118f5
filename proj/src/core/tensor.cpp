#include "memsig/tensor.hpp"

#include <limits>
#include <string>

namespace memsig {

std::size_t tensor_size(std::size_t dim, std::size_t level) {
  std::size_t n = 1;
  for (std::size_t r = 0; r < level; ++r) {
    if (dim != 0 && n > std::numeric_limits<std::size_t>::max() / dim)
      throw ShapeError("tensor too large");
    n *= dim;
  }
  return n;
}

std::size_t MultiArray::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != shape.size()) throw ShapeError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t r = 0; r < shape.size(); ++r) {
    if (index[r] >= shape[r]) throw ShapeError("index out of range");
    flat = flat * shape[r] + index[r];
  }
  return flat;
}

SigTensor::SigTensor(std::size_t level, std::size_t dim)
    : level_(level), dim_(dim), entries_(tensor_size(dim, level)) {
  if (dim == 0) throw ShapeError("tensor dimension must be at least 1");
  if (level == 0) entries_[0] = 1;
}

SigTensor::SigTensor(std::size_t level, std::size_t dim, std::vector<Rational> entries)
    : level_(level), dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) throw ShapeError("tensor dimension must be at least 1");
  if (entries_.size() != tensor_size(dim, level))
    throw ShapeError("tensor entry count " + std::to_string(entries_.size()) + " != " +
                     std::to_string(dim) + "^" + std::to_string(level));
}

SigTensor SigTensor::from_function(std::size_t level, std::size_t dim,
                                   const std::function<Rational(const Word&)>& entry) {
  SigTensor t(level, dim);
  Word w(level, 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    t.entries_[flat] = entry(w);
    // increment w as an odometer, last letter fastest
    for (std::size_t r = level; r-- > 0;) {
      if (++w[r] < dim) break;
      w[r] = 0;
    }
  }
  return t;
}

SigTensor SigTensor::from_matrix(const Matrix& m) {
  if (!m.is_square()) throw ShapeError("level-2 tensor needs a square matrix");
  return SigTensor(2, m.rows(), std::vector<Rational>(m.entries().begin(), m.entries().end()));
}

std::size_t SigTensor::flat_index(const Word& w) const {
  if (w.size() != level_) throw ShapeError("word length does not match tensor level");
  std::size_t flat = 0;
  for (auto letter : w) {
    if (letter >= dim_) throw ShapeError("letter out of range");
    flat = flat * dim_ + letter;
  }
  return flat;
}

Word SigTensor::word_of(std::size_t flat) const {
  Word w(level_);
  for (std::size_t r = level_; r-- > 0;) {
    w[r] = flat % dim_;
    flat /= dim_;
  }
  return w;
}

Matrix SigTensor::as_matrix() const {
  if (level_ != 2) throw ShapeError("as_matrix needs a level-2 tensor");
  return Matrix(dim_, dim_, entries_);
}

MultiArray to_multi_array(const SigTensor& t) {
  return MultiArray{std::vector<std::size_t>(t.level(), t.dim()),
                    std::vector<Rational>(t.entries().begin(), t.entries().end())};
}

namespace {

// Contract mode `mode` of t with a (rows x shape[mode]).
MultiArray mode_product(const MultiArray& t, std::size_t mode, const Matrix& a) {
  const std::size_t old_dim = t.shape[mode];
  if (a.cols() != old_dim) throw ShapeError("tucker factor column count does not match mode size");
  std::size_t outer = 1;
  for (std::size_t r = 0; r < mode; ++r) outer *= t.shape[r];
  std::size_t inner = 1;
  for (std::size_t r = mode + 1; r < t.shape.size(); ++r) inner *= t.shape[r];

  MultiArray out;
  out.shape = t.shape;
  out.shape[mode] = a.rows();
  out.entries.assign(outer * a.rows() * inner, Rational());
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t j = 0; j < old_dim; ++j) {
      const Rational* src = &t.entries[(o * old_dim + j) * inner];
      for (std::size_t i = 0; i < a.rows(); ++i) {
        const Rational& aij = a(i, j);
        if (aij.is_zero()) continue;
        Rational* dst = &out.entries[(o * a.rows() + i) * inner];
        for (std::size_t q = 0; q < inner; ++q) dst[q].add_product(aij, src[q]);
      }
    }
  return out;
}

}  // namespace

MultiArray tucker_apply_modes(const MultiArray& t, std::span<const Matrix* const> factors) {
  if (factors.size() != t.shape.size()) throw ShapeError("one tucker factor per mode required");
  MultiArray current = t;
  for (std::size_t r = 0; r < factors.size(); ++r)
    if (factors[r] != nullptr) current = mode_product(current, r, *factors[r]);
  return current;
}

SigTensor tucker_apply(const SigTensor& t, const Matrix& a) {
  if (a.cols() != t.dim())
    throw ShapeError("tucker_apply: matrix has " + std::to_string(a.cols()) +
                     " columns, tensor dimension is " + std::to_string(t.dim()));
  std::vector<const Matrix*> factors(t.level(), &a);
  MultiArray out = tucker_apply_modes(to_multi_array(t), factors);
  return SigTensor(t.level(), a.rows(), std::move(out.entries));
}

SigTensor hadamard(const SigTensor& a, const SigTensor& b) {
  if (a.level() != b.level() || a.dim() != b.dim()) throw ShapeError("hadamard shape mismatch");
  std::vector<Rational> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a[i] * b[i];
  return SigTensor(a.level(), a.dim(), std::move(e));
}

}  // namespace memsig
