#include "nvwire/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "nvwire/error.hpp"

namespace nvwire::csv {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& context) {
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc{})
    throw IoError("bad number '" + s + "' in " + context);
  return v;
}

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> out;
  size_t begin = 0;
  while (true) {
    const size_t pos = line.find(sep, begin);
    if (pos == std::string::npos) {
      out.push_back(line.substr(begin));
      break;
    }
    out.push_back(line.substr(begin, pos - begin));
    begin = pos + 1;
  }
  // Trim trailing CR from files with Windows line endings.
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
    out.back().pop_back();
  return out;
}

Table read_numeric(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Table t;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_line(line);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells)
      row.push_back(parse_double(c, path + ":" + std::to_string(lineno)));
    if (row.size() != t.header.size())
      throw IoError(path + ":" + std::to_string(lineno) +
                    ": expected " + std::to_string(t.header.size()) +
                    " columns, got " + std::to_string(row.size()));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw IoError(path + ": empty file");
  return t;
}

void write_numeric(const std::string& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (size_t i = 0; i < table.header.size(); ++i)
    out << table.header[i] << (i + 1 < table.header.size() ? "," : "\n");
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
  }
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace nvwire::csv
