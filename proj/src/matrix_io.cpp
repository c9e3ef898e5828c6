#include "qergo/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qergo/errors.hpp"

namespace qergo {

using nlohmann::json;

ComplexMatrix parse_matrix_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("matrix file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("matrix file: top level must be an object");
  for (const char* key : {"rows", "cols", "re", "im"}) {
    if (!doc.contains(key)) throw ValidationError(std::string("matrix file: missing key '") + key + "'");
  }
  if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer()) {
    throw ValidationError("matrix file: 'rows' and 'cols' must be integers");
  }
  const auto rows = doc["rows"].get<std::int64_t>();
  const auto cols = doc["cols"].get<std::int64_t>();
  if (rows < 1 || cols < 1) throw ValidationError("matrix file: dimensions must be positive");
  const auto& re = doc["re"];
  const auto& im = doc["im"];
  if (!re.is_array() || !im.is_array()) throw ValidationError("matrix file: 're' and 'im' must be arrays");
  const auto count = static_cast<std::size_t>(rows * cols);
  if (re.size() != count || im.size() != count) {
    throw ValidationError("matrix file: expected " + std::to_string(count) +
                          " entries in 're' and 'im'");
  }
  ComplexMatrix a(rows, cols);
  for (std::size_t k = 0; k < count; ++k) {
    if (!re[k].is_number() || !im[k].is_number()) {
      throw ValidationError("matrix file: entry " + std::to_string(k) + " is not a number");
    }
    a(static_cast<Index>(k) / cols, static_cast<Index>(k) % cols) =
        Complex(re[k].get<double>(), im[k].get<double>());
  }
  if (!all_finite(a)) throw ValidationError("matrix file: entries must be finite");
  return a;
}

ComplexMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open matrix file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_json(buf.str());
}

std::string matrix_to_json(const ComplexMatrix& a) {
  json doc;
  doc["rows"] = a.rows();
  doc["cols"] = a.cols();
  json re = json::array();
  json im = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      re.push_back(a(i, j).real());
      im.push_back(a(i, j).imag());
    }
  }
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump();
}

void write_matrix_file(const ComplexMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write matrix file '" + path + "'");
  out << matrix_to_json(a) << '\n';
}

}  // namespace qergo
