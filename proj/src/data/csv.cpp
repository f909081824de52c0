#include "dashsnap/data/csv.hpp"

#include <charconv>
#include <cmath>
#include <iterator>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dashsnap/core/error.hpp"

namespace dashsnap {

namespace {

using Record = std::vector<std::string>;

/// Splits RFC 4180 text into records. Quoted fields may span lines; a
/// trailing newline does not produce an empty record.
std::vector<Record> split_records(std::string_view text) {
  std::vector<Record> out;
  Record current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    current.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    out.push_back(std::move(current));
    current.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          throw Error(Code::CsvRagged, "stray quote inside field on line " + std::to_string(line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (current.empty() && field.empty() && !field_started) {
          ++line;  // blank line
          break;
        }
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) throw Error(Code::CsvRagged, "unterminated quoted field");
  if (field_started || !field.empty() || !current.empty()) end_record();
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

ColumnType infer(const std::vector<Record>& records, std::size_t col) {
  bool all_dates = true, all_numbers = true, any = false;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& s = records[r][col];
    if (s.empty()) continue;
    any = true;
    if (all_dates && !Date::parse(s)) all_dates = false;
    if (all_numbers && !parse_number(s)) all_numbers = false;
    if (!all_dates && !all_numbers) break;
  }
  if (!any) return ColumnType::String;
  if (all_dates) return ColumnType::Date;
  if (all_numbers) return ColumnType::Number;
  return ColumnType::String;
}

Cell convert(const std::string& s, ColumnType type, std::size_t row, const std::string& column) {
  if (s.empty()) return std::monostate{};
  switch (type) {
    case ColumnType::String:
      return s;
    case ColumnType::Number:
      if (auto v = parse_number(s)) return *v;
      break;
    case ColumnType::Date:
      if (auto d = Date::parse(s)) return *d;
      break;
  }
  throw Error(Code::CsvCellType, "row " + std::to_string(row) + ", column '" + column + "': '" + s +
                                     "' is not a " + std::string(type_name(type)));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Table load_table_text(std::string_view text, const std::optional<SchemaOverride>& schema) {
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  auto records = split_records(text);
  if (records.empty()) throw Error(Code::CsvRagged, "missing header row");
  const auto& header = records.front();
  std::set<std::string> seen;
  for (const auto& h : header) {
    if (!seen.insert(h).second) throw Error(Code::CsvDuplicateHeader, "duplicate header '" + h + "'");
  }
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw Error(Code::CsvRagged, "row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                                       " fields, header has " + std::to_string(header.size()));
    }
  }
  if (schema) {
    for (const auto& [name, type] : *schema) {
      if (!seen.count(name)) {
        throw Error(Code::UnknownColumn, "schema declares column '" + name + "' missing from the CSV header");
      }
    }
  }

  std::vector<Column> columns;
  for (std::size_t c = 0; c < header.size(); ++c) {
    ColumnType type = ColumnType::String;
    if (schema) {
      if (auto it = schema->find(header[c]); it != schema->end()) {
        type = it->second;
      } else {
        type = infer(records, c);
      }
    } else {
      type = infer(records, c);
    }
    columns.push_back({header[c], type});
  }

  std::vector<Row> rows;
  rows.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    Row row;
    row.reserve(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
      row.push_back(convert(records[r][c], columns[c].type, r, columns[c].name));
    }
    rows.push_back(std::move(row));
  }
  return Table(std::move(columns), std::move(rows));
}

Table load_table(std::istream& in, const std::optional<SchemaOverride>& schema) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_table_text(text, schema);
}

SchemaOverride parse_schema_sidecar(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception& e) {
    throw Error(Code::Syntax, "schema file: " + e.msg, SourceSpan{e.mark.line + 1, e.mark.column + 1});
  }
  if (!root.IsMap()) throw Error(Code::TypeMismatch, "schema file must map column names to types");
  SchemaOverride out;
  for (auto it = root.begin(); it != root.end(); ++it) {
    auto name = it->first.as<std::string>();
    auto type = type_from_name(it->second.as<std::string>());
    if (!type) {
      throw Error(Code::InvalidValue, "column '" + name + "': type must be number, string or date",
                  SourceSpan{it->second.Mark().line + 1, it->second.Mark().column + 1});
    }
    out[name] = *type;
  }
  return out;
}

std::string write_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t c = 0; c < table.column_count(); ++c) {
    if (c) out << ',';
    out << csv_field(table.columns()[c].name);
  }
  out << '\n';
  for (const auto& row : table.rows()) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (!is_null(row[c])) out << csv_field(display(row[c]));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dashsnap
