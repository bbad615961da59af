#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

namespace agsparse::csv {

// String-typed table; numeric cells are produced by format_double so that
// emit/parse round-trips exactly and output bytes are deterministic.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Table&) const = default;
};

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);
std::string format_size(std::size_t v);

void write(std::ostream& out, const Table& table);
std::string to_string(const Table& table);
Table parse(std::istream& in);
Table parse_string(const std::string& text);

// Numeric CSV with a header row (dataset files).
struct NumericCsv {
  std::vector<std::string> header;
  Eigen::MatrixXd values;
};

NumericCsv read_numeric_csv(std::istream& in);
NumericCsv read_numeric_csv_file(const std::string& path);

}  // namespace agsparse::csv
