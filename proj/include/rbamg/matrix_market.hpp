#pragma once

#include <iosfwd>
#include <string>

#include "rbamg/linalg/sparse.hpp"

namespace rbamg {

/// Coordinate Matrix Market files with real, integer or complex fields and
/// general, symmetric or hermitian symmetry. Symmetric storage is expanded
/// on read. Malformed input throws ParseError carrying the line number.
SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market(const std::string& path);

/// Writes `coordinate real general` when every entry is real, otherwise
/// `coordinate complex general`. Values use 17 significant digits so a
/// read after write reproduces every double exactly.
void write_matrix_market(const SparseMatrix& a, std::ostream& out);
void write_matrix_market(const SparseMatrix& a, const std::string& path);

}  // namespace rbamg
