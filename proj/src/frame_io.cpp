// SPDX-License-Identifier: MIT
/// \file frame_io.cpp
/// \brief Frame readers/writers and formatting helpers.

#include "scalekit/frame_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scalekit::io {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(errc::io_error, "cannot open " + path + " for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) raise(errc::io_error, "error while reading " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) raise(errc::io_error, "error while writing " + path);
}

namespace {

Mat parse_frame_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    const auto& cols = j.at("columns");
    if (n < 1 || m < 1 || !cols.is_array() || static_cast<int>(cols.size()) != m)
      raise(errc::parse_error, "frame JSON: 'columns' must hold m arrays of n numbers");
    Mat a(n, m);
    for (int i = 0; i < m; ++i) {
      const auto& col = cols.at(i);
      if (!col.is_array() || static_cast<int>(col.size()) != n)
        raise(errc::parse_error, "frame JSON: column " + std::to_string(i) +
                                     " does not have n entries");
      for (int k = 0; k < n; ++k) a(k, i) = col.at(k).get<double>();
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    raise(errc::parse_error, std::string("frame JSON: ") + e.what());
  }
}

Mat parse_frame_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        raise(errc::parse_error, "frame CSV: cannot parse '" + cell + "' as a number");
      }
      while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
      if (used != cell.size())
        raise(errc::parse_error, "frame CSV: trailing junk in cell '" + cell + "'");
      row.push_back(v);
    }
    if (row.empty()) raise(errc::parse_error, "frame CSV: empty row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) raise(errc::parse_error, "frame CSV: no data rows");
  const std::size_t m = rows[0].size();
  for (const auto& row : rows)
    if (row.size() != m) raise(errc::parse_error, "frame CSV: ragged rows");
  Mat a(static_cast<int>(rows.size()), static_cast<int>(m));
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) a(i, j) = rows[i][j];
  return a;
}

}  // namespace

Mat parse_frame_matrix(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '{' ? parse_frame_json(text) : parse_frame_csv(text);
  }
  raise(errc::parse_error, "empty frame file");
}

UnitNormFrame read_frame(const std::string& path, double tol) {
  return validate_frame(parse_frame_matrix(read_text_file(path)), tol);
}

std::string frame_to_json(const UnitNormFrame& f) {
  std::string out = "{\"n\": " + std::to_string(f.n()) + ", \"m\": " + std::to_string(f.m()) +
                    ", \"columns\": [";
  for (int i = 0; i < f.m(); ++i) {
    out += i ? ", [" : "[";
    for (int k = 0; k < f.n(); ++k) {
      if (k) out += ", ";
      out += fmt17(f.entry(k, i));
    }
    out += "]";
  }
  out += "]}\n";
  return out;
}

std::string frame_to_csv(const UnitNormFrame& f) {
  std::string out;
  for (int k = 0; k < f.n(); ++k) {
    for (int i = 0; i < f.m(); ++i) {
      if (i) out += ",";
      out += fmt17(f.entry(k, i));
    }
    out += "\n";
  }
  return out;
}

}  // namespace scalekit::io
