#pragma once

#include <optional>
#include <string>

#include "dashsnap/core/value.hpp"

namespace dashsnap::templates {

/// Chat-friendly number: thousands separators, at most two decimals with
/// trailing zeros trimmed. 1234.5 -> "1,234.5", 0.256 -> "0.26".
std::string format_display(double v);

/// Ratio as a whole percentage: 0.6 -> "60%".
std::string format_percent(double ratio);

/// Nulls print as "no value"; dates as ISO; strings verbatim.
std::string format_display(const std::optional<double>& v);
std::string format_display(const Cell& c);

/// The value a printed number stands for: `v` rounded to two decimals.
double displayed_value(double v);

}  // namespace dashsnap::templates
