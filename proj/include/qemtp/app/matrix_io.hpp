#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "qemtp/common.hpp"

namespace qemtp::app {

/// Rows of numbers separated by commas and/or whitespace. Blank lines and
/// lines starting with # are skipped. Throws ParseError on ragged rows or
/// malformed numbers.
Matrix read_matrix(std::istream& in);
Matrix load_matrix(const std::string& path);

/// A single column (or a single row) of numbers.
Vector load_vector(const std::string& path);

/// One row per line, comma separated, %.17g.
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace qemtp::app
