#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dashsnap/templates/render.hpp"

namespace dashsnap::templates::detail {

struct SeriesPoint {
  Date date;
  double value;
};

std::optional<std::size_t> nominal_index(const std::vector<Dimension>& dims);
std::optional<std::size_t> temporal_index(const std::vector<Dimension>& dims);

/// Series keyed by the nominal value ("" when not disaggregated), points in
/// date order, null values skipped.
std::map<std::string, std::vector<SeriesPoint>> collect_series(const TemplateConfig& cfg, const ResultTable& result);

/// The per-category parameter holding goals: the design's goal parameter
/// when given, otherwise the first per-category parameter bound.
const std::map<std::string, double>* goals_of(const TemplateConfig& cfg, const TemplateDesign* d);

}  // namespace dashsnap::templates::detail

namespace dashsnap::templates::detail {

inline const std::vector<std::string>& palette() {
  static const std::vector<std::string> p{"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                          "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  return p;
}

/// Fill for the `index`-th category (or series): an ordinal scale on the
/// dimension maps its domain onto its range; a scale on the measure with a
/// range fixes one color; otherwise the default palette.
std::string color_for(const std::vector<Scale>& scales, const std::string& measure, const std::string& dimension,
                      const std::string& category, std::size_t index);

/// True when the result holds no non-null value.
bool no_data(const ResultTable& result);

/// Value-axis tick positions for [lo, hi]: lo, midpoint, hi.
std::vector<double> ticks(double lo, double hi);

}  // namespace dashsnap::templates::detail
