#include "table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "sqbath/error.hpp"

namespace sqbath::cli {

std::size_t Table::column_index(std::string_view name) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "table has no column '" + std::string(name) + "'");
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row has " + std::to_string(cells.size()) +
                                                  " cells for " + std::to_string(columns.size()) +
                                                  " columns");
  }
  rows.push_back(std::move(cells));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", value == 0.0 ? 0.0 : value);
  return buf;
}

double parse_number(std::string_view text) {
  if (text == "nan") return NAN;
  if (text == "inf") return INFINITY;
  if (text == "-inf") return -INFINITY;
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  const auto join = [&out](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out << ',';
      out << cells[k];
    }
    out << '\n';
  };
  join(table.columns);
  for (const auto& row : table.rows) join(row);
}

void write_jsonl(std::ostream& out, const Table& table) {
  for (const auto& c : table.comments) out << nlohmann::json{{"comment", c}}.dump() << '\n';
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::string& cell = row[k];
      double value = 0.0;
      const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (!cell.empty() && ec == std::errc{} && end == cell.data() + cell.size()) {
        obj[table.columns[k]] = value;
      } else {
        obj[table.columns[k]] = cell;
      }
    }
    out << obj.dump() << '\n';
  }
}

void write_table(std::ostream& out, const Table& table, Format format) {
  if (format == Format::Csv) {
    write_csv(out, table);
  } else {
    write_jsonl(out, table);
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  bool have_header = false;
  const auto split = [](const std::string& text) {
    std::vector<std::string> cells;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!text.empty() && text.back() == ',') cells.emplace_back();
    return cells;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.comments.push_back(line.size() > 2 && line[1] == ' ' ? line.substr(2) : line.substr(1));
    } else if (!have_header) {
      table.columns = split(line);
      have_header = true;
    } else {
      table.add_row(split(line));
    }
  }
  if (!have_header) throw Error(ErrorCode::InvalidArgument, "CSV has no header row");
  return table;
}

std::string comment_value(const Table& table, std::string_view key) {
  for (const auto& c : table.comments) {
    const auto eq = c.find(" = ");
    if (eq != std::string::npos && std::string_view(c).substr(0, eq) == key) {
      return c.substr(eq + 3);
    }
  }
  return {};
}

}  // namespace sqbath::cli
