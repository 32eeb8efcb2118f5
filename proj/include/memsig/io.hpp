#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "memsig/grid.hpp"
#include "memsig/matrix.hpp"
#include "memsig/membrane_sig.hpp"
#include "memsig/path_sig.hpp"
#include "memsig/rational.hpp"
#include "memsig/tensor.hpp"

namespace memsig {

using Json = nlohmann::json;

/// Value for the "order" field of tensor files.
inline constexpr std::string_view kTensorOrder = "row-major-1-based-words";

/// Parses text as JSON; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Rationals are "p" or "p/q" strings; plain JSON integers are accepted too.
Rational rational_from_json(const Json& value, const std::string& where);
Json rational_to_json(const Rational& r);

GridData grid_from_json(const Json& doc);
Json grid_to_json(const GridData& grid);

/// {"rows": r, "cols": c, "entries": [[...], ...]}; a bare nested array is
/// also accepted on input.
Matrix matrix_from_json(const Json& doc, const std::string& where);
Json matrix_to_json(const Matrix& m);

struct TensorFile {
  SigTensor tensor;
  bool with_float = false;
};

Json tensor_to_json(const TensorFile& file);
TensorFile tensor_from_json(const Json& doc);
/// Canonical text of a tensor file (2-space indent, trailing newline).
std::string serialize_tensor(const TensorFile& file);

PathSpec path_from_json(const Json& doc, const std::string& where);
/// Membrane spec documents: a grid file, or an object with "type" one of
/// "bilinear", "polynomial", "product", "transformed".
MembraneSpec membrane_from_json(const Json& doc);
bool is_grid_document(const Json& doc);

}  // namespace memsig
