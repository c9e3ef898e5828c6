#include "cli/report.hpp"

#include <cmath>
#include <charconv>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "qergo/errors.hpp"

namespace qergo::cli {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell_to_csv(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double x) const { return format_number(x); }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(const std::string& s) const { return csv_escape(s); }
  };
  return std::visit(Visitor{}, c);
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
  struct Visitor {
    nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
    nlohmann::ordered_json operator()(double x) const {
      if (!std::isfinite(x)) return nullptr;
      return x;
    }
    nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
    nlohmann::ordered_json operator()(bool b) const { return b; }
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

void write_table_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_csv(row[i]);
    os << '\n';
  }
}

const Table& require_table(const Report& r, const std::string& name) {
  const Table* t = r.find(name);
  if (!t) {
    std::string names;
    for (const auto& tb : r.tables) names += (names.empty() ? "" : ", ") + tb.name;
    throw ValidationError("no table named '" + name + "' in this report (available: " + names + ")");
  }
  return *t;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table " + name + ": row width " + std::to_string(row.size()) +
                           " does not match " + std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

const Table* Report::find(const std::string& name) const {
  for (const auto& t : tables)
    if (t.name == name) return &t;
  return nullptr;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Shortest representation that parses back to the same double.
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(const Report& r, std::ostream& os, const std::string& only_table) {
  for (const auto& [k, v] : r.metadata) os << "# " << k << '=' << v << '\n';
  if (!only_table.empty()) {
    write_table_csv(require_table(r, only_table), os);
    return;
  }
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) os << '\n';
    first = false;
    os << "# table=" << t.name << '\n';
    write_table_csv(t, os);
  }
}

void write_json(const Report& r, std::ostream& os, const std::string& only_table) {
  nlohmann::ordered_json doc;
  auto& meta = doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  auto& tables = doc["tables"] = nlohmann::ordered_json::object();
  auto emit = [&](const Table& t) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_to_json(row[i]);
      rows.push_back(std::move(obj));
    }
    tables[t.name] = std::move(rows);
  };
  if (!only_table.empty()) {
    emit(require_table(r, only_table));
  } else {
    for (const auto& t : r.tables) emit(t);
  }
  os << doc.dump(2) << '\n';
}

void write_report(const Report& r, Format f, std::ostream& os, const std::string& only_table) {
  if (f == Format::Csv) {
    write_csv(r, os, only_table);
  } else {
    write_json(r, os, only_table);
  }
}

}  // namespace qergo::cli
