#include "memsig/path_sig.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "memsig/log.hpp"
#include "memsig/univariate.hpp"

namespace memsig {

const char* to_string(CoreKind kind) { return kind == CoreKind::moment ? "moment" : "axis"; }

CoreKind core_kind_from_string(std::string_view name) {
  if (name == "moment") return CoreKind::moment;
  if (name == "axis") return CoreKind::axis;
  throw ParseError("unknown core kind \"" + std::string(name) + "\" (expected moment or axis)");
}

PolynomialPath PolynomialPath::from_coefficients_with_constant(const Matrix& full) {
  if (full.cols() < 1) throw ShapeError("polynomial coefficient matrix needs a constant column");
  bool dropped = false;
  Matrix coeffs(full.rows(), full.cols() - 1);
  for (std::size_t i = 0; i < full.rows(); ++i) {
    dropped = dropped || !full(i, 0).is_zero();
    for (std::size_t j = 1; j < full.cols(); ++j) coeffs(i, j - 1) = full(i, j);
  }
  if (dropped) warn("polynomial path: constant terms dropped (signatures are translation invariant)");
  return PolynomialPath{std::move(coeffs)};
}

namespace {

Matrix increments(const std::vector<std::vector<Rational>>& vertices) {
  if (vertices.size() < 2) throw ShapeError("piecewise linear path needs at least 2 vertices");
  const std::size_t d = vertices.front().size();
  if (d == 0) throw ShapeError("path vertices must have dimension >= 1");
  Matrix a(d, vertices.size() - 1);
  for (std::size_t j = 0; j + 1 < vertices.size(); ++j) {
    if (vertices[j + 1].size() != d) throw ShapeError("path vertices have differing dimensions");
    for (std::size_t i = 0; i < d; ++i) a(i, j) = vertices[j + 1][i] - vertices[j][i];
  }
  return a;
}

void check_letters(const Word& word, std::size_t order) {
  for (auto l : word)
    if (l >= order)
      throw ShapeError("letter " + std::to_string(l) + " out of range for order " + std::to_string(order));
}

}  // namespace

PathDictionary path_dictionary(const PathSpec& path) {
  struct Visitor {
    PathDictionary operator()(const LinearPath& p) const {
      if (p.increment.empty()) throw ShapeError("linear path needs dimension >= 1");
      return {Matrix::column(p.increment), CoreKind::axis, 1};
    }
    PathDictionary operator()(const MomentPath& p) const {
      if (p.degree == 0) throw ShapeError("moment path degree must be >= 1");
      return {Matrix::identity(p.degree), CoreKind::moment, p.degree};
    }
    PathDictionary operator()(const AxisPath& p) const {
      if (p.order == 0) throw ShapeError("axis path order must be >= 1");
      return {Matrix::identity(p.order), CoreKind::axis, p.order};
    }
    PathDictionary operator()(const PiecewiseLinearPath& p) const {
      Matrix a = increments(p.vertices);
      const std::size_t order = a.cols();
      return {std::move(a), CoreKind::axis, order};
    }
    PathDictionary operator()(const PolynomialPath& p) const {
      if (p.coeffs.cols() == 0 || p.coeffs.rows() == 0) throw ShapeError("empty polynomial path");
      return {p.coeffs, CoreKind::moment, p.coeffs.cols()};
    }
  };
  return std::visit(Visitor{}, path);
}

std::size_t path_dimension(const PathSpec& path) { return path_dictionary(path).transform.rows(); }

SigTensor linear_path_sig(std::span<const Rational> increment, std::size_t level) {
  if (increment.empty()) throw ShapeError("linear path needs dimension >= 1");
  const Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(level));
  return SigTensor::from_function(level, increment.size(), [&](const Word& w) {
    Rational e = inv_fact;
    for (auto l : w) e *= increment[l];
    return e;
  });
}

Rational moment_path_sig_entry(const Word& word) {
  Rational num(1);
  Rational den(1);
  long prefix = 0;
  for (std::size_t r = 0; r < word.size(); ++r) {
    const long degree = static_cast<long>(word[r]) + 1;
    prefix += degree;
    if (r > 0) {
      num *= Rational(degree);
      den *= Rational(prefix);
    }
  }
  return num / den;
}

Rational axis_path_sig_entry(const Word& word, std::size_t order) {
  check_letters(word, order);
  if (!std::is_sorted(word.begin(), word.end())) return Rational(0);
  // k!/prod(mult!) distinct rearrangements, divided by k!
  Rational e(1);
  std::size_t run = 0;
  for (std::size_t r = 0; r < word.size(); ++r) {
    run = (r > 0 && word[r] == word[r - 1]) ? run + 1 : 1;
    e /= Rational(static_cast<long>(run));
  }
  return e;
}

Rational path_core_entry(CoreKind kind, const Word& word, std::size_t order) {
  if (kind == CoreKind::axis) return axis_path_sig_entry(word, order);
  check_letters(word, order);
  return moment_path_sig_entry(word);
}

SigTensor path_core_tensor(CoreKind kind, std::size_t order, std::size_t level) {
  if (order == 0) throw ShapeError("dictionary order must be >= 1");
  return SigTensor::from_function(level, order,
                                  [&](const Word& w) { return path_core_entry(kind, w, order); });
}

SigTensor pw_linear_path_sig(const std::vector<std::vector<Rational>>& vertices, std::size_t level) {
  const Matrix a = increments(vertices);
  return tucker_apply(path_core_tensor(CoreKind::axis, a.cols(), level), a);
}

Rational poly_path_sig_oracle(const PolynomialPath& path, const Word& word) {
  const Matrix& c = path.coeffs;
  std::vector<UniPoly> velocity;
  velocity.reserve(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) {
    std::vector<Rational> coeffs(c.cols() + 1);
    for (std::size_t j = 0; j < c.cols(); ++j) coeffs[j + 1] = c(i, j);
    velocity.push_back(UniPoly(std::move(coeffs)).derivative());
  }
  UniPoly running = UniPoly::constant(1);
  for (auto letter : word) {
    if (letter >= c.rows()) throw ShapeError("letter out of range for path dimension");
    running = (running * velocity[letter]).antiderivative();
  }
  return running(Rational(1));
}

SigTensor path_sig(const PathSpec& path, std::size_t level) {
  const PathDictionary dict = path_dictionary(path);
  return tucker_apply(path_core_tensor(dict.kind, dict.order, level), dict.transform);
}

}  // namespace memsig
