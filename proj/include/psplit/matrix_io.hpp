#pragma once

#include "psplit/matrix.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace psplit {

// Text matrix format:
//
//   # comment lines start with '#'
//   m n
//   a11 a12 ... a1n
//   ...
//   am1 am2 ... amn
//
// One matrix row per line, whitespace separated decimal tokens. Blank lines
// are ignored. Every failure throws Error(ErrorCode::Parse) naming the source
// and line.

Matrix parse_matrix(std::string_view text, std::string_view source = "<string>");
Matrix read_matrix_file(const std::filesystem::path& path);

/// Reads an m x 1 or 1 x m matrix file as a vector.
Vector read_vector_file(const std::filesystem::path& path);

/// Writes in the text format with 17 significant digits, so parse_matrix
/// reproduces every entry exactly.
void write_matrix(std::ostream& os, const Matrix& m);
std::string format_matrix(const Matrix& m);
void write_matrix_file(const std::filesystem::path& path, const Matrix& m);

} // namespace psplit
