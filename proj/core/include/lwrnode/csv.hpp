#ifndef LWRNODE_CSV_HPP_
#define LWRNODE_CSV_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace lwrnode::csv {

/// Shortest round-trip decimal form ("%.17g"); stable across runs.
std::string number(double value);

void write_row(std::ostream& os, const std::vector<std::string>& fields);
void write_row(std::ostream& os, const std::vector<double>& values);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws std::out_of_range if missing.
  std::size_t column(const std::string& name) const;
};

/// Parses a numeric CSV with one header line. Throws std::runtime_error on
/// malformed input.
Table read(std::istream& is);
Table read_file(const std::string& path);

}  // namespace lwrnode::csv

#endif  // LWRNODE_CSV_HPP_
