#include "agsparse/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "agsparse/errors.hpp"

namespace agsparse::csv {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_size(std::size_t v) { return std::to_string(v); }

namespace {

bool needs_quoting(const std::string& s) {
  return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << (needs_quoting(row[i]) ? quote(row[i]) : row[i]);
  }
  out << '\n';
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace

void write(std::ostream& out, const Table& table) {
  write_row(out, table.header);
  for (const auto& row : table.rows) write_row(out, row);
}

std::string to_string(const Table& table) {
  std::ostringstream ss;
  write(ss, table);
  return ss.str();
}

Table parse(std::istream& in) {
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == EOF) break;
    auto cells = split_row(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
    } else {
      table.rows.push_back(std::move(cells));
    }
  }
  return table;
}

Table parse_string(const std::string& text) {
  std::istringstream ss(text);
  return parse(ss);
}

NumericCsv read_numeric_csv(std::istream& in) {
  Table t = parse(in);
  if (t.header.empty()) throw DomainError("csv: missing header row");
  NumericCsv out;
  out.header = t.header;
  out.values.resize(static_cast<Eigen::Index>(t.rows.size()),
                    static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].size() != t.header.size()) {
      throw DomainError("csv: row " + std::to_string(i + 2) +
                        " has the wrong number of fields");
    }
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      const std::string& cell = t.rows[i][j];
      double v = 0.0;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw DomainError("csv: non-numeric cell '" + cell + "' at row " +
                          std::to_string(i + 2));
      }
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return out;
}

NumericCsv read_numeric_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("csv: cannot open '" + path + "'");
  return read_numeric_csv(in);
}

}  // namespace agsparse::csv
