#include "lwrnode/csv.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lwrnode::csv {

std::string number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) os << ',';
    os << fields[k];
  }
  os << '\n';
}

void write_row(std::ostream& os, const std::vector<double>& values) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) os << ',';
    os << number(values[k]);
  }
  os << '\n';
}

std::size_t Table::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw std::out_of_range("no CSV column named " + name);
  }
  return static_cast<std::size_t>(std::distance(header.begin(), it));
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table read(std::istream& is) {
  Table table;
  std::string line;
  if (!std::getline(is, line)) {
    throw std::runtime_error("empty CSV");
  }
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("CSV line " + std::to_string(line_no) +
                               ": wrong field count");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (f.empty() || end != f.c_str() + f.size()) {
        throw std::runtime_error("CSV line " + std::to_string(line_no) +
                                 ": not a number: " + f);
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read(in);
}

}  // namespace lwrnode::csv
