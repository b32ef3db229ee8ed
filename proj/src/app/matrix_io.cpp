#include "qemtp/app/matrix_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <vector>

namespace qemtp::app {

namespace {

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> row;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ',' || *p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || (next < end && *next != ',' && *next != ' ' && *next != '\t' && *next != '\r'))
      throw ParseError("malformed number", line_no);
    row.push_back(v);
    p = next;
  }
  return row;
}

}  // namespace

Matrix read_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    rows.push_back(parse_row(line, line_no));
    if (rows.back().size() != rows.front().size()) throw ParseError("row length differs from the first row", line_no);
  }
  if (rows.empty()) throw ParseError("no numeric rows", 0);
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return m;
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open " + path);
  return read_matrix(in);
}

Vector load_vector(const std::string& path) {
  const Matrix m = load_matrix(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw ParseError(path + ": expected a single row or column", 0);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  char buf[32];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
      out << (c ? "," : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace qemtp::app
