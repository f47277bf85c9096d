#pragma once

// Locale-independent CSV helpers ('.' decimal separator always; no quoting —
// all files here are plain numeric tables with a header line).

#include <string>
#include <vector>

namespace nvwire::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV with one header line. Throws IoError naming the file
/// and the first offending line.
Table read_numeric(const std::string& path);

/// Writes a numeric CSV; numbers are emitted with round-trip precision.
void write_numeric(const std::string& path, const Table& table);

std::string format_double(double v);
double parse_double(const std::string& s, const std::string& context);
std::vector<std::string> split_line(const std::string& line, char sep = ',');

}  // namespace nvwire::csv
