// tsv.hpp - Header-free tab-separated numeric tables

#pragma once

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtstrat {

using Table = std::vector<std::vector<double>>;

inline void write_tsv(std::ostream& os, const Table& rows, int precision = 12)
{
  os << std::setprecision(precision);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "\t" : "") << row[k];
    os << '\n';
  }
}

inline void write_tsv(const std::string& path, const Table& rows, int precision = 12)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_tsv(out, rows, precision);
  if (!out) throw std::runtime_error("write failed for " + path);
}

inline Table read_tsv(std::istream& in, const std::string& source = "<stream>")
{
  Table rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::vector<double> row;
    std::string cell;
    while (ls >> cell) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size())
        throw std::runtime_error(source + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Table read_tsv(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_tsv(in, path);
}

} // namespace rtstrat
