#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dashsnap/data/table.hpp"

namespace dashsnap {

/// Declared column types, e.g. from a sidecar schema file.
using SchemaOverride = std::map<std::string, ColumnType, std::less<>>;

/// RFC 4180 CSV with a header row. Empty cells are null. Undeclared columns
/// are inferred: all non-empty cells ISO dates -> date, all numeric ->
/// number, otherwise string.
/// Throws Error(CsvRagged | CsvDuplicateHeader | CsvCellType).
Table load_table(std::istream& in, const std::optional<SchemaOverride>& schema = std::nullopt);
Table load_table_text(std::string_view text, const std::optional<SchemaOverride>& schema = std::nullopt);

/// Sidecar schema: a YAML mapping of column name to number|string|date.
SchemaOverride parse_schema_sidecar(std::string_view yaml_text);

/// Writes RFC 4180 CSV; dates ISO, numbers shortest round-trip, nulls empty.
std::string write_csv(const Table& table);

}  // namespace dashsnap
