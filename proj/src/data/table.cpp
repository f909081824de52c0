#include "dashsnap/data/table.hpp"

#include <set>

#include "dashsnap/core/error.hpp"

namespace dashsnap {

namespace {

bool cell_fits(const Cell& c, ColumnType type) {
  switch (c.index()) {
    case 0: return true;
    case 1: return type == ColumnType::Number;
    case 2: return type == ColumnType::String;
    default: return type == ColumnType::Date;
  }
}

}  // namespace

Table::Table(std::vector<Column> columns, std::vector<Row> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
  std::set<std::string> names;
  for (const auto& c : columns_) {
    if (!names.insert(c.name).second) {
      throw Error(Code::CsvDuplicateHeader, "duplicate column '" + c.name + "'");
    }
  }
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].size() != columns_.size()) {
      throw Error(Code::CsvRagged, "row " + std::to_string(r + 1) + " has " + std::to_string(rows_[r].size()) +
                                       " cells, expected " + std::to_string(columns_.size()));
    }
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (!cell_fits(rows_[r][c], columns_[c].type)) {
        throw Error(Code::CsvCellType, "row " + std::to_string(r + 1) + ", column '" + columns_[c].name +
                                           "' does not hold a " + std::string(type_name(columns_[c].type)));
      }
    }
  }
}

std::optional<std::size_t> Table::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::require_column(std::string_view name) const {
  auto i = column_index(name);
  if (!i) throw Error(Code::UnknownColumn, "unknown column '" + std::string(name) + "'");
  return *i;
}

DataSourceSchema Table::schema() const {
  DataSourceSchema s;
  for (const auto& c : columns_) s.columns.push_back({c.name, c.type});
  return s;
}

Table Table::select(std::span<const unsigned char> mask) const {
  Table out;
  out.columns_ = columns_;
  for (std::size_t i = 0; i < rows_.size() && i < mask.size(); ++i) {
    if (mask[i]) out.rows_.push_back(rows_[i]);
  }
  return out;
}

}  // namespace dashsnap
