#include "rbamg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rbamg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

enum class Field { real, integer, complex };
enum class Symmetry { general, symmetric, hermitian };

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty Matrix Market input", 1);
  ++line_no;

  std::istringstream header(line);
  std::string banner, object, format, field_s, symmetry_s;
  header >> banner >> object >> format >> field_s >> symmetry_s;
  if (banner != "%%MatrixMarket")
    throw ParseError("missing %%MatrixMarket banner", line_no);
  if (lower(object) != "matrix")
    throw ParseError("unsupported object '" + object + "'", line_no);
  if (lower(format) != "coordinate")
    throw ParseError("only coordinate format is supported, got '" + format + "'",
                     line_no);
  Field field;
  const std::string f = lower(field_s);
  if (f == "real") field = Field::real;
  else if (f == "integer") field = Field::integer;
  else if (f == "complex") field = Field::complex;
  else throw ParseError("unsupported field '" + field_s + "'", line_no);
  Symmetry sym;
  const std::string s = lower(symmetry_s);
  if (s == "general") sym = Symmetry::general;
  else if (s == "symmetric") sym = Symmetry::symmetric;
  else if (s == "hermitian") sym = Symmetry::hermitian;
  else throw ParseError("unsupported symmetry '" + symmetry_s + "'", line_no);
  if (sym == Symmetry::hermitian && field != Field::complex)
    throw ParseError("hermitian symmetry requires a complex field", line_no);

  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos || line[pos] == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError("missing size line", line_no + 1);
  long long rows = -1, cols = -1, nnz = -1;
  {
    std::istringstream size_line(line);
    std::string extra;
    if (!(size_line >> rows >> cols >> nnz) || (size_line >> extra) ||
        rows < 0 || cols < 0 || nnz < 0)
      throw ParseError("malformed size line '" + line + "'", line_no);
  }
  if (sym != Symmetry::general && rows != cols)
    throw ParseError("symmetric storage requires a square matrix", line_no);

  std::vector<SparseMatrix::Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(nnz) * (sym == Symmetry::general ? 1 : 2));
  for (long long e = 0; e < nnz; ++e) {
    if (!next_content_line())
      throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                           std::to_string(e),
                       line_no + 1);
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double re = 0, im = 0;
    if (!(entry >> i >> j >> re) || (field == Field::complex && !(entry >> im)))
      throw ParseError("malformed entry '" + line + "'", line_no);
    std::string extra;
    if (entry >> extra) throw ParseError("trailing data in entry '" + line + "'", line_no);
    if (i < 1 || i > rows || j < 1 || j > cols)
      throw ParseError("index (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") outside " + std::to_string(rows) + "x" +
                           std::to_string(cols),
                       line_no);
    if (sym != Symmetry::general && j > i)
      throw ParseError("entry above the diagonal in symmetric storage", line_no);
    const Index r = static_cast<Index>(i - 1);
    const Index c = static_cast<Index>(j - 1);
    const Scalar v{re, im};
    triplets.push_back({r, c, v});
    if (r != c && sym == Symmetry::symmetric) triplets.push_back({c, r, v});
    if (r != c && sym == Symmetry::hermitian) triplets.push_back({c, r, std::conj(v)});
  }
  if (next_content_line()) throw ParseError("unexpected data after the last entry", line_no);
  return SparseMatrix::from_triplets(static_cast<Index>(rows),
                                     static_cast<Index>(cols), std::move(triplets));
}

SparseMatrix read_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return read_matrix_market(in);
  } catch (const ParseError& e) {
    throw ParseError(e.message() + " in " + path, e.line());
  }
}

void write_matrix_market(const SparseMatrix& a, std::ostream& out) {
  const auto vals = a.values();
  const bool complex = std::any_of(vals.begin(), vals.end(),
                                   [](const Scalar& v) { return v.imag() != 0.0; });
  out << "%%MatrixMarket matrix coordinate " << (complex ? "complex" : "real")
      << " general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  for (const auto& t : a.triplets()) {
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value.real());
    if (complex) out << ' ' << format_double(t.value.imag());
    out << '\n';
  }
}

void write_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_matrix_market(a, out);
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace rbamg
