#include "memsig/io.hpp"

#include <fstream>
#include <sstream>

namespace memsig {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  const auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(where + ": missing field \"" + key + "\"");
  return *it;
}

std::size_t count_field(const Json& doc, const char* key, const std::string& where) {
  const Json& v = field(doc, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

const Json& array_of(const Json& v, std::size_t expected, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  if (v.size() != expected)
    throw ShapeError(where + ": expected " + std::to_string(expected) + " elements, got " +
                     std::to_string(v.size()));
  return v;
}

std::vector<Rational> rational_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array");
  std::vector<Rational> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(rational_from_json(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string type_of(const Json& doc, const std::string& where) {
  const Json& t = field(doc, "type", where);
  if (!t.is_string()) throw ParseError(where + ".type: expected a string");
  return t.get<std::string>();
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot open for writing");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

Rational rational_from_json(const Json& value, const std::string& where) {
  if (value.is_string()) {
    try {
      return Rational::parse(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rational::parse(value.dump());
  throw ParseError(where + ": expected a rational string \"p\" or \"p/q\"");
}

Json rational_to_json(const Rational& r) { return r.str(); }

bool is_grid_document(const Json& doc) { return doc.is_object() && doc.contains("values") && !doc.contains("type"); }

GridData grid_from_json(const Json& doc) {
  const std::string where = "grid";
  const std::size_t d = count_field(doc, "d", where);
  const std::size_t m = count_field(doc, "m", where);
  const std::size_t n = count_field(doc, "n", where);
  if (d == 0 || m == 0 || n == 0) throw ShapeError("grid: d, m, n must be >= 1");
  const Json& values = array_of(field(doc, "values", where), d, "grid.values");
  std::vector<Rational> flat;
  flat.reserve(d * (m + 1) * (n + 1));
  for (std::size_t i = 0; i < d; ++i) {
    const std::string wi = "grid.values[" + std::to_string(i) + "]";
    const Json& plane = array_of(values[i], m + 1, wi);
    for (std::size_t a = 0; a <= m; ++a) {
      const std::string wa = wi + "[" + std::to_string(a) + "]";
      const Json& row = array_of(plane[a], n + 1, wa);
      for (std::size_t b = 0; b <= n; ++b) flat.push_back(rational_from_json(row[b], wa + "[" + std::to_string(b) + "]"));
    }
  }
  return GridData(d, m, n, std::move(flat));
}

Json grid_to_json(const GridData& grid) {
  Json values = Json::array();
  for (std::size_t i = 0; i < grid.d(); ++i) {
    Json plane = Json::array();
    for (std::size_t a = 0; a <= grid.m(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b <= grid.n(); ++b) row.push_back(grid.at(i, a, b).str());
      plane.push_back(std::move(row));
    }
    values.push_back(std::move(plane));
  }
  return Json{{"d", grid.d()}, {"m", grid.m()}, {"n", grid.n()}, {"values", std::move(values)}};
}

Matrix matrix_from_json(const Json& doc, const std::string& where) {
  const Json* rows_json = &doc;
  std::string rows_where = where;
  if (doc.is_object()) {
    rows_json = &field(doc, "entries", where);
    rows_where = where + ".entries";
  }
  if (!rows_json->is_array() || rows_json->empty()) throw ParseError(rows_where + ": expected a nonempty array of rows");
  const std::size_t rows = rows_json->size();
  if (!(*rows_json)[0].is_array()) throw ParseError(rows_where + "[0]: expected an array");
  const std::size_t cols = (*rows_json)[0].size();
  std::vector<Rational> entries;
  entries.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string wi = rows_where + "[" + std::to_string(i) + "]";
    for (auto& r : rational_vector(array_of((*rows_json)[i], cols, wi), wi)) entries.push_back(std::move(r));
  }
  if (doc.is_object()) {
    if (doc.contains("rows") && count_field(doc, "rows", where) != rows) throw ShapeError(where + ": rows mismatch");
    if (doc.contains("cols") && count_field(doc, "cols", where) != cols) throw ShapeError(where + ": cols mismatch");
  }
  return Matrix(rows, cols, std::move(entries));
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (const auto& e : m.row(i)) row.push_back(e.str());
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Json tensor_to_json(const TensorFile& file) {
  Json entries = Json::array();
  for (const auto& e : file.tensor.entries()) entries.push_back(e.str());
  Json doc{{"level", file.tensor.level()},
           {"dim", file.tensor.dim()},
           {"order", std::string(kTensorOrder)},
           {"entries", std::move(entries)}};
  if (file.with_float) {
    Json floats = Json::array();
    for (const auto& e : file.tensor.entries()) floats.push_back(e.to_double());
    doc["float_entries"] = std::move(floats);
  }
  return doc;
}

TensorFile tensor_from_json(const Json& doc) {
  const std::string where = "tensor";
  const std::size_t level = count_field(doc, "level", where);
  const std::size_t dim = count_field(doc, "dim", where);
  if (dim == 0) throw ShapeError("tensor: dim must be >= 1");
  const Json& order = field(doc, "order", where);
  if (!order.is_string() || order.get<std::string>() != kTensorOrder)
    throw ParseError("tensor.order: expected \"" + std::string(kTensorOrder) + "\"");
  const std::size_t size = tensor_size(dim, level);
  std::vector<Rational> entries = rational_vector(array_of(field(doc, "entries", where), size, "tensor.entries"),
                                                  "tensor.entries");
  TensorFile file{SigTensor(level, dim, std::move(entries)), doc.contains("float_entries")};
  if (file.with_float) array_of(doc["float_entries"], size, "tensor.float_entries");
  return file;
}

std::string serialize_tensor(const TensorFile& file) { return tensor_to_json(file).dump(2) + "\n"; }

PathSpec path_from_json(const Json& doc, const std::string& where) {
  const std::string type = type_of(doc, where);
  if (type == "linear") return LinearPath{rational_vector(field(doc, "increment", where), where + ".increment")};
  if (type == "moment") return MomentPath{count_field(doc, "degree", where)};
  if (type == "axis") return AxisPath{count_field(doc, "order", where)};
  if (type == "piecewise_linear") {
    const Json& vs = field(doc, "vertices", where);
    if (!vs.is_array()) throw ParseError(where + ".vertices: expected an array");
    std::vector<std::vector<Rational>> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i)
      vertices.push_back(rational_vector(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
    return PiecewiseLinearPath{std::move(vertices)};
  }
  if (type == "polynomial") {
    const Matrix coeffs = matrix_from_json(field(doc, "coeffs", where), where + ".coeffs");
    if (doc.value("with_constant", false)) return PolynomialPath::from_coefficients_with_constant(coeffs);
    return PolynomialPath{coeffs};
  }
  throw ParseError(where + ".type: unknown path type \"" + type + "\"");
}

namespace {

MembraneSpec membrane_at(const Json& doc, const std::string& where) {
  if (is_grid_document(doc)) return MembraneSpec{PiecewiseBilinearMembrane{grid_from_json(doc)}};
  const std::string type = type_of(doc, where);
  if (type == "bilinear") return MembraneSpec{PiecewiseBilinearMembrane{grid_from_json(field(doc, "grid", where))}};
  if (type == "polynomial") {
    const std::size_t m = count_field(doc, "m", where);
    const std::size_t n = count_field(doc, "n", where);
    if (doc.contains("terms")) {
      const std::size_t d = count_field(doc, "d", where);
      const Json& terms = field(doc, "terms", where);
      if (!terms.is_array()) throw ParseError(where + ".terms: expected an array");
      std::vector<PolynomialTerm> parsed;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string wt = where + ".terms[" + std::to_string(t) + "]";
        const Json& term = array_of(terms[t], 4, wt);
        for (std::size_t c = 0; c < 3; ++c)
          if (!term[c].is_number_integer() || term[c].get<long long>() < 0)
            throw ParseError(wt + "[" + std::to_string(c) + "]: expected a nonnegative integer");
        parsed.push_back({term[0].get<std::size_t>(), term[1].get<std::size_t>(), term[2].get<std::size_t>(),
                          rational_from_json(term[3], wt + "[3]")});
      }
      return MembraneSpec{PolynomialMembrane::from_terms(d, m, n, parsed)};
    }
    Matrix coeffs = matrix_from_json(field(doc, "coeffs", where), where + ".coeffs");
    if (coeffs.cols() != m * n)
      throw ShapeError(where + ".coeffs: expected " + std::to_string(m * n) + " columns, got " +
                       std::to_string(coeffs.cols()));
    return MembraneSpec{PolynomialMembrane{std::move(coeffs), m, n}};
  }
  if (type == "product")
    return MembraneSpec{ProductMembrane{path_from_json(field(doc, "x", where), where + ".x"),
                                        path_from_json(field(doc, "y", where), where + ".y")}};
  if (type == "transformed") {
    Matrix transform = matrix_from_json(field(doc, "transform", where), where + ".transform");
    auto base = std::make_shared<const MembraneSpec>(membrane_at(field(doc, "base", where), where + ".base"));
    return MembraneSpec{TransformedMembrane{std::move(transform), std::move(base)}};
  }
  throw ParseError(where + ".type: unknown membrane type \"" + type + "\"");
}

}  // namespace

MembraneSpec membrane_from_json(const Json& doc) { return membrane_at(doc, "membrane"); }

}  // namespace memsig
