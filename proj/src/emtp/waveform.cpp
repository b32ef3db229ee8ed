#include "qemtp/emtp/waveform.hpp"

#include "qemtp/common.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace qemtp::emtp {

Waveform::Waveform(std::vector<std::string> channel_names)
    : names_(std::move(channel_names)), columns_(names_.size()) {}

void Waveform::append(double t, const std::vector<double>& values) {
  if (values.size() != names_.size()) throw InvalidParameter("waveform: sample width does not match channel count");
  time_.push_back(t);
  for (std::size_t c = 0; c < values.size(); ++c) columns_[c].push_back(values[c]);
}

bool Waveform::has_channel(const std::string& name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& Waveform::channel(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidParameter("waveform: no channel '" + name + "'");
  return columns_[static_cast<std::size_t>(it - names_.begin())];
}

namespace {

void put(std::ostream& out, double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  out << buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    cells.push_back(cell);
  }
  return cells;
}

}  // namespace

void Waveform::write_csv(std::ostream& out) const {
  out << 't';
  for (const auto& n : names_) out << ',' << n;
  out << '\n';
  for (std::size_t k = 0; k < time_.size(); ++k) {
    put(out, time_[k]);
    for (const auto& col : columns_) {
      out << ',';
      put(out, col[k]);
    }
    out << '\n';
  }
}

Waveform Waveform::read_csv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("waveform: empty input", 0);
  auto header = split_csv(line);
  if (header.empty() || header[0] != "t") throw ParseError("waveform: first column must be 't'", 1);
  Waveform w(std::vector<std::string>(header.begin() + 1, header.end()));
  std::vector<double> row(header.size() - 1);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) throw ParseError("waveform: expected " + std::to_string(header.size()) + " columns", line_no);
    double t = 0.0;
    try {
      t = std::stod(cells[0]);
      for (std::size_t c = 1; c < cells.size(); ++c) row[c - 1] = std::stod(cells[c]);
    } catch (const std::exception&) {
      throw ParseError("waveform: malformed number", line_no);
    }
    w.append(t, row);
  }
  return w;
}

}  // namespace qemtp::emtp
