#include "dashsnap/spec_io/yaml_scalar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace dashsnap::spec_io {

namespace {

std::optional<double> as_number(std::string_view text) {
  if (text.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool reserved(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static constexpr std::array<std::string_view, 12> kWords{
      "true", "false", "yes", "no", "on", "off", "null", "~", "y", "n", ".nan", ".inf"};
  return std::find(kWords.begin(), kWords.end(), lower) != kWords.end();
}

bool plain_safe_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == ' ' || c == '_' || c == '.' ||
         c == '/' || c == '(' || c == ')' || c == '-' || c == '+' || c == ',';
}

}  // namespace

Scalar classify_plain(std::string_view text) {
  if (auto n = as_number(text)) return *n;
  if (auto d = Date::parse(text); d && text.size() == 10) return *d;
  return std::string(text);
}

std::string double_quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\x%02x", static_cast<unsigned char>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

std::string quote_string(std::string_view text) {
  bool plain = !text.empty() && text.front() != ' ' && text.back() != ' ' &&
               std::isalnum(static_cast<unsigned char>(text.front())) &&
               std::all_of(text.begin(), text.end(), plain_safe_char) && !reserved(text) &&
               std::holds_alternative<std::string>(classify_plain(text)) &&
               text.find(" -") == std::string_view::npos && text.find("  ") == std::string_view::npos;
  return plain ? std::string(text) : double_quoted(text);
}

std::string emit_scalar(const Scalar& s) {
  if (auto* d = std::get_if<double>(&s)) return format_number(*d);
  if (auto* d = std::get_if<Date>(&s)) return d->iso();
  return quote_string(std::get<std::string>(s));
}

}  // namespace dashsnap::spec_io
