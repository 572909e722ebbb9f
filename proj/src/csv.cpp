#include "gpfast/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpfast/errors.hpp"

namespace gpfast::csv {
namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_row(std::ostream& os, const Row& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    os << quote(row[i]);
  }
  os << '\n';
}

Row parse_line(const std::string& line) {
  Row row;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field += c;
    }
  }
  row.push_back(std::move(field));
  return row;
}

}  // namespace

std::string format(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format(std::size_t value) { return std::to_string(value); }

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

void write(const std::filesystem::path& path, const Table& table) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  write_row(os, table.header);
  for (const auto& row : table.rows) write_row(os, row);
  os.flush();
  if (!os) throw IoError("failed writing " + path.string());
}

Table read(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string() + " for reading");
  Table table;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (first) {
      table.header = parse_line(line);
      first = false;
    } else if (!line.empty()) {
      table.rows.push_back(parse_line(line));
    }
  }
  return table;
}

}  // namespace gpfast::csv
