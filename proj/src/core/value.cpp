#include "dashsnap/core/value.hpp"

#include <charconv>
#include <cmath>

namespace dashsnap {

std::string_view type_name(ColumnType type) {
  switch (type) {
    case ColumnType::Number: return "number";
    case ColumnType::String: return "string";
    case ColumnType::Date: return "date";
  }
  return "string";
}

std::optional<ColumnType> type_from_name(std::string_view name) {
  if (name == "number") return ColumnType::Number;
  if (name == "string") return ColumnType::String;
  if (name == "date") return ColumnType::Date;
  return std::nullopt;
}

ColumnType type_of(const Scalar& s) {
  switch (s.index()) {
    case 0: return ColumnType::Number;
    case 1: return ColumnType::String;
    default: return ColumnType::Date;
  }
}

bool is_null(const Cell& c) { return std::holds_alternative<std::monostate>(c); }

Cell to_cell(const Scalar& s) {
  return std::visit([](const auto& v) -> Cell { return v; }, s);
}

std::optional<Scalar> to_scalar(const Cell& c) {
  if (auto* d = std::get_if<double>(&c)) return Scalar{*d};
  if (auto* s = std::get_if<std::string>(&c)) return Scalar{*s};
  if (auto* d = std::get_if<Date>(&c)) return Scalar{*d};
  return std::nullopt;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string display(const Scalar& s) {
  if (auto* d = std::get_if<double>(&s)) return format_number(*d);
  if (auto* d = std::get_if<Date>(&s)) return d->iso();
  return std::get<std::string>(s);
}

std::string display(const Cell& c) {
  auto s = to_scalar(c);
  return s ? display(*s) : std::string("null");
}

std::strong_ordering compare_cells(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return a.index() <=> b.index();
  switch (a.index()) {
    case 0: return std::strong_ordering::equal;
    case 1: {
      double x = std::get<double>(a), y = std::get<double>(b);
      if (x < y) return std::strong_ordering::less;
      if (x > y) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    case 2: return std::get<std::string>(a) <=> std::get<std::string>(b);
    default: return std::get<Date>(a) <=> std::get<Date>(b);
  }
}

std::optional<Scalar> coerce(const Scalar& s, ColumnType type) {
  if (type_of(s) == type) return s;
  switch (type) {
    case ColumnType::String:
      return std::nullopt;
    case ColumnType::Date:
      if (auto* str = std::get_if<std::string>(&s)) {
        if (auto d = Date::parse(*str)) return Scalar{*d};
      }
      return std::nullopt;
    case ColumnType::Number:
      if (auto* str = std::get_if<std::string>(&s)) {
        double v = 0;
        auto [ptr, ec] = std::from_chars(str->data(), str->data() + str->size(), v);
        if (ec == std::errc{} && ptr == str->data() + str->size() && std::isfinite(v)) {
          return Scalar{v};
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace dashsnap
