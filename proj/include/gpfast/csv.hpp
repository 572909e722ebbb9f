#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gpfast::csv {

using Row = std::vector<std::string>;

struct Table {
  Row header;
  std::vector<Row> rows;
};

/// Shortest-safe decimal form: 17 significant digits, '.' separator.
std::string format(double value);
std::string format(std::size_t value);
/// Fixed three decimals, used for speed ratios.
std::string format_ratio(double value);

/// Writes RFC-4180-style CSV with a header row. Fields containing a comma,
/// quote or newline are quoted. Throws IoError if the file cannot be written.
void write(const std::filesystem::path& path, const Table& table);
/// Reads a file written by `write`. Throws IoError if it cannot be opened.
Table read(const std::filesystem::path& path);

}  // namespace gpfast::csv
