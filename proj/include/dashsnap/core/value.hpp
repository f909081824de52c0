#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "dashsnap/core/calendar.hpp"

namespace dashsnap {

enum class ColumnType { Number, String, Date };

std::string_view type_name(ColumnType type);
std::optional<ColumnType> type_from_name(std::string_view name);

/// A typed literal: a filter operand, an annotation target, a table cell.
using Scalar = std::variant<double, std::string, Date>;

/// A table cell; monostate is SQL-style null.
using Cell = std::variant<std::monostate, double, std::string, Date>;

ColumnType type_of(const Scalar& s);
bool is_null(const Cell& c);
Cell to_cell(const Scalar& s);
std::optional<Scalar> to_scalar(const Cell& c);

/// Shortest decimal text that reads back to the same double.
std::string format_number(double v);
/// Plain display text: numbers via format_number, dates ISO, strings verbatim.
std::string display(const Scalar& s);
std::string display(const Cell& c);

/// Total order used for sorting group keys: null < number < string < date,
/// then by value within a type.
std::strong_ordering compare_cells(const Cell& a, const Cell& b);

/// Coerces a literal to a column's type, e.g. the string "2022-03-02" to a
/// Date for a date column. Returns nullopt when the literal does not fit.
std::optional<Scalar> coerce(const Scalar& s, ColumnType type);

}  // namespace dashsnap
