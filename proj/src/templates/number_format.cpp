#include "dashsnap/templates/number_format.hpp"

#include <cmath>
#include <cstdio>

namespace dashsnap::templates {

double displayed_value(double v) {
  double r = std::round(v * 100.0) / 100.0;
  return r == 0 ? 0.0 : r;
}

std::string format_display(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "NaN" : (v > 0 ? "Infinity" : "-Infinity");
  v = displayed_value(v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", std::fabs(v));
  std::string digits(buf);
  auto dot = digits.find('.');
  std::string whole = digits.substr(0, dot);
  std::string frac = digits.substr(dot + 1);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();

  std::string grouped;
  int n = static_cast<int>(whole.size());
  for (int i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) grouped += ',';
    grouped += whole[static_cast<std::size_t>(i)];
  }
  std::string out = v < 0 ? "-" + grouped : grouped;
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::string format_percent(double ratio) {
  double pct = std::round(ratio * 100.0);
  if (pct == 0) pct = 0;  // no "-0%"
  return format_display(pct) + "%";
}

std::string format_display(const std::optional<double>& v) { return v ? format_display(*v) : "no value"; }

std::string format_display(const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) return format_display(*d);
  if (is_null(c)) return "no value";
  return display(c);
}

}  // namespace dashsnap::templates
