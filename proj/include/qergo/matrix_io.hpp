#pragma once

#include <string>

#include "qergo/tensor.hpp"

namespace qergo {

// Matrix files are JSON objects {"rows": n, "cols": m, "re": [...], "im": [...]}
// with entries in row-major order. Malformed input throws ValidationError.
ComplexMatrix parse_matrix_json(const std::string& text);
ComplexMatrix read_matrix_file(const std::string& path);
std::string matrix_to_json(const ComplexMatrix& a);
void write_matrix_file(const ComplexMatrix& a, const std::string& path);

}  // namespace qergo
