#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qergo::cli {

// Empty cells print as "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table(std::string name, std::vector<std::string> columns)
      : name(std::move(name)), columns(std::move(columns)) {}

  // Throws std::logic_error when the width does not match the header.
  void add_row(std::vector<Cell> row);
};

struct Report {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Table> tables;

  void meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  const Table* find(const std::string& name) const;
};

enum class Format { Csv, Json };

std::string format_number(double x);

// CSV: "# key=value" metadata lines, then per table a "# table=<name>"
// marker, header and rows; tables are separated by blank lines. When
// only_table is nonempty just that table is written (header and rows
// after the metadata).
void write_csv(const Report& r, std::ostream& os, const std::string& only_table = {});
void write_json(const Report& r, std::ostream& os, const std::string& only_table = {});
void write_report(const Report& r, Format f, std::ostream& os, const std::string& only_table = {});

}  // namespace qergo::cli
