#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "smaxwell/error.hpp"

namespace smaxwell {

/// Shortest round-trip-safe text for a double.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

using CsvCell = std::variant<std::string, double, long long>;

inline std::string format_cell(const CsvCell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<long long>(c));
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<CsvCell> row) {
    detail::require(row.size() == header_.size(), "csv: row width differs from header");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<CsvCell>>& rows() const { return rows_; }

  std::string str() const {
    std::string out;
    auto line = [&out](const auto& cells, auto fmt) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += fmt(cells[i]);
      }
      out += '\n';
    };
    line(header_, [](const std::string& s) { return s; });
    for (const auto& r : rows_) line(r, format_cell);
    return out;
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ComputationError("cannot open " + path.string() + " for writing");
    f << str();
    if (!f) throw ComputationError("failed writing " + path.string());
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

}  // namespace smaxwell
