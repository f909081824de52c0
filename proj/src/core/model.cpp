#include "dashsnap/core/model.hpp"

#include <algorithm>
#include <array>

namespace dashsnap {

namespace {

template <typename E, std::size_t N>
std::string_view lookup_name(const std::array<std::pair<E, std::string_view>, N>& table, E v) {
  for (const auto& [e, n] : table) {
    if (e == v) return n;
  }
  return {};
}

template <typename E, std::size_t N>
std::optional<E> lookup_value(const std::array<std::pair<E, std::string_view>, N>& table,
                              std::string_view s) {
  for (const auto& [e, n] : table) {
    if (n == s) return e;
  }
  return std::nullopt;
}

constexpr std::array<std::pair<MeasureKind, std::string_view>, 3> kMeasureKinds{{
    {MeasureKind::Column, "column"},
    {MeasureKind::Aggregated, "aggregated"},
    {MeasureKind::Computed, "computed"},
}};
constexpr std::array<std::pair<Aggregate, std::string_view>, 5> kAggregates{{
    {Aggregate::Sum, "sum"},
    {Aggregate::Avg, "avg"},
    {Aggregate::Min, "min"},
    {Aggregate::Max, "max"},
    {Aggregate::Count, "count"},
}};
constexpr std::array<std::pair<DimensionKind, std::string_view>, 2> kDimensionKinds{{
    {DimensionKind::Nominal, "nominal"},
    {DimensionKind::Temporal, "temporal"},
}};
constexpr std::array<std::pair<Mark, std::string_view>, 5> kMarks{{
    {Mark::Bar, "bar"},
    {Mark::Line, "line"},
    {Mark::Area, "area"},
    {Mark::Point, "point"},
    {Mark::TextMetric, "text-metric"},
}};
constexpr std::array<std::pair<Appearance, std::string_view>, 3> kAppearances{{
    {Appearance::Visual, "visual"},
    {Appearance::Text, "text"},
    {Appearance::Both, "both"},
}};
constexpr std::array<std::pair<AnnotationKind, std::string_view>, 3> kAnnotationKinds{{
    {AnnotationKind::Highlight, "highlight"},
    {AnnotationKind::ReferenceLine, "reference-line"},
    {AnnotationKind::Note, "note"},
}};

std::string join_scalars(const std::vector<Scalar>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += display(values[i]);
  }
  return out;
}

}  // namespace

std::string_view name_of(MeasureKind v) { return lookup_name(kMeasureKinds, v); }
std::string_view name_of(Aggregate v) { return lookup_name(kAggregates, v); }
std::string_view name_of(DimensionKind v) { return lookup_name(kDimensionKinds, v); }
std::string_view name_of(Mark v) { return lookup_name(kMarks, v); }
std::string_view name_of(Appearance v) { return lookup_name(kAppearances, v); }
std::string_view name_of(AnnotationKind v) { return lookup_name(kAnnotationKinds, v); }

std::optional<MeasureKind> measure_kind_from(std::string_view s) { return lookup_value(kMeasureKinds, s); }
std::optional<Aggregate> aggregate_from(std::string_view s) { return lookup_value(kAggregates, s); }
std::optional<DimensionKind> dimension_kind_from(std::string_view s) { return lookup_value(kDimensionKinds, s); }
std::optional<Mark> mark_from(std::string_view s) { return lookup_value(kMarks, s); }
std::optional<Appearance> appearance_from(std::string_view s) { return lookup_value(kAppearances, s); }
std::optional<AnnotationKind> annotation_kind_from(std::string_view s) { return lookup_value(kAnnotationKinds, s); }

std::string describe(const DataFilter& filter) {
  return std::visit(
      [&](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, EqualsPredicate>) {
          return filter.column + " is " + display(p.value);
        } else if constexpr (std::is_same_v<T, OneOfPredicate>) {
          return filter.column + " is one of " + join_scalars(p.values);
        } else if constexpr (std::is_same_v<T, RangePredicate>) {
          return filter.column + " between " + format_number(p.min) + " and " + format_number(p.max);
        } else {
          return filter.column + " from " + p.start.iso() + " to " + p.end.iso();
        }
      },
      filter.predicate);
}

std::string TimeFrame::describe() const {
  return duration.str() + " from " + start.iso() + " by " + field;
}

const Scale* OriginalDesign::scale_for(std::string_view field) const {
  auto it = std::find_if(scales.begin(), scales.end(), [&](const Scale& s) { return s.field == field; });
  return it == scales.end() ? nullptr : &*it;
}

const Measure* ComponentSpec::find_measure(std::string_view name) const {
  auto it = std::find_if(measures.begin(), measures.end(), [&](const Measure& m) { return m.name == name; });
  return it == measures.end() ? nullptr : &*it;
}

const Dimension* ComponentSpec::find_dimension(std::string_view name) const {
  auto it = std::find_if(dimensions.begin(), dimensions.end(), [&](const Dimension& d) { return d.name == name; });
  return it == dimensions.end() ? nullptr : &*it;
}

std::string_view curation_name(const Curation& c) {
  switch (c.index()) {
    case 0: return "stack";
    case 1: return "carousel";
    case 2: return "slideshow";
    default: return "mini-dashboard";
  }
}

const ComponentSpec* SnapshotSpec::find_component(std::string_view cid) const {
  auto it = std::find_if(components.begin(), components.end(),
                         [&](const ComponentSpec& c) { return c.id == cid; });
  return it == components.end() ? nullptr : &*it;
}

}  // namespace dashsnap
