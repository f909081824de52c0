#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dashsnap/core/validation.hpp"
#include "dashsnap/core/value.hpp"

namespace dashsnap {

struct Column {
  std::string name;
  ColumnType type = ColumnType::String;

  friend bool operator==(const Column&, const Column&) = default;
};

using Row = std::vector<Cell>;

/// Immutable, row-oriented table. Every non-null cell matches its column's
/// type and column names are unique; the constructor enforces both.
class Table {
 public:
  Table() = default;
  Table(std::vector<Column> columns, std::vector<Row> rows);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return columns_.size(); }

  std::optional<std::size_t> column_index(std::string_view name) const;
  /// Throws Error(UnknownColumn).
  std::size_t require_column(std::string_view name) const;
  const Cell& at(std::size_t row, std::size_t col) const { return rows_[row][col]; }

  DataSourceSchema schema() const;

  /// Rows whose mask entry is non-zero, in order.
  Table select(std::span<const unsigned char> mask) const;

  friend bool operator==(const Table&, const Table&) = default;

 private:
  std::vector<Column> columns_;
  std::vector<Row> rows_;
};

}  // namespace dashsnap
