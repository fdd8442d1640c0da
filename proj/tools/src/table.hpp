#pragma once

// Plain text tables shared by every subcommand: '#' comment lines, a header
// row and string cells, written as CSV or JSON lines.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sqbath::cli {

struct Table {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(std::string_view name) const;  // throws if absent
  void add_row(std::vector<std::string> cells);
};

enum class Format { Csv, JsonLines };

/// 15 significant digits, "nan"/"inf" spelled out.
std::string format_number(double value);
double parse_number(std::string_view text);

void write_csv(std::ostream& out, const Table& table);
/// One object per row keyed by column name; comments go first as
/// {"comment": "..."} lines.
void write_jsonl(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, Format format);

/// Parses what write_csv produced.
Table read_csv(std::istream& in);

/// Value of a "key = value" comment line, if present.
std::string comment_value(const Table& table, std::string_view key);

}  // namespace sqbath::cli
