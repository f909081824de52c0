#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dashsnap/core/calendar.hpp"
#include "dashsnap/core/value.hpp"

namespace dashsnap {

// ---------------------------------------------------------------------------
// Measures and dimensions
// ---------------------------------------------------------------------------

enum class MeasureKind { Column, Aggregated, Computed };
enum class Aggregate { Sum, Avg, Min, Max, Count };

/// A quantitative variable: a raw column, an aggregate over a column, or an
/// arithmetic expression over other measures of the same component.
struct Measure {
  std::string name;
  MeasureKind kind = MeasureKind::Aggregated;
  std::optional<std::string> source_column;
  std::optional<Aggregate> aggregate;
  std::optional<std::string> expression;
  std::optional<std::string> unit;

  friend bool operator==(const Measure&, const Measure&) = default;
};

enum class DimensionKind { Nominal, Temporal };

struct Dimension {
  std::string name;
  std::string source_column;
  DimensionKind kind = DimensionKind::Nominal;

  friend bool operator==(const Dimension&, const Dimension&) = default;
};

// ---------------------------------------------------------------------------
// Filters and time frames
// ---------------------------------------------------------------------------

struct EqualsPredicate {
  Scalar value;
  friend bool operator==(const EqualsPredicate&, const EqualsPredicate&) = default;
};
struct OneOfPredicate {
  std::vector<Scalar> values;
  friend bool operator==(const OneOfPredicate&, const OneOfPredicate&) = default;
};
/// Inclusive on both ends.
struct RangePredicate {
  double min = 0;
  double max = 0;
  friend bool operator==(const RangePredicate&, const RangePredicate&) = default;
};
/// Half-open [start, end), congruent with time frames.
struct DateRangePredicate {
  Date start;
  Date end;
  friend bool operator==(const DateRangePredicate&, const DateRangePredicate&) = default;
};

using Predicate = std::variant<EqualsPredicate, OneOfPredicate, RangePredicate, DateRangePredicate>;

struct DataFilter {
  std::string column;
  Predicate predicate;

  friend bool operator==(const DataFilter&, const DataFilter&) = default;
};

/// Human-readable rendering used by transparency blocks, e.g.
/// "Category is Furniture" or "Order Date from 2022-03-02 to 2022-04-02".
std::string describe(const DataFilter& filter);

/// Half-open window [start, start + duration) over a date column.
struct TimeFrame {
  std::string field;
  Date start;
  Duration duration{1, DurationUnit::Month};

  Date end() const { return add(start, duration); }
  std::string describe() const;

  friend bool operator==(const TimeFrame&, const TimeFrame&) = default;
};

// ---------------------------------------------------------------------------
// Design
// ---------------------------------------------------------------------------

enum class Mark { Bar, Line, Area, Point, TextMetric };

struct Scale {
  std::string field;
  std::string type;  // linear | log | ordinal | time
  std::vector<std::string> domain;
  std::vector<std::string> range;

  friend bool operator==(const Scale&, const Scale&) = default;
};

struct OriginalDesign {
  Mark mark = Mark::Bar;
  std::map<std::string, std::string> encodings;  // channel -> field name
  std::vector<Scale> scales;

  const Scale* scale_for(std::string_view field) const;

  friend bool operator==(const OriginalDesign&, const OriginalDesign&) = default;
};

enum class Appearance { Visual, Text, Both };

/// A template parameter value: a number, free text, or one number per
/// category of the component's dimension.
using ParamValue = std::variant<double, std::string, std::map<std::string, double>>;

struct TemplateBinding {
  std::string design_id;
  std::map<std::string, ParamValue> parameters;

  friend bool operator==(const TemplateBinding&, const TemplateBinding&) = default;
};

// ---------------------------------------------------------------------------
// Situational context
// ---------------------------------------------------------------------------

enum class AnnotationKind { Highlight, ReferenceLine, Note };

struct DimensionValueTarget {
  std::string dimension;
  Scalar value;
  friend bool operator==(const DimensionValueTarget&, const DimensionValueTarget&) = default;
};
struct MeasureThresholdTarget {
  std::string measure;
  double value = 0;
  friend bool operator==(const MeasureThresholdTarget&, const MeasureThresholdTarget&) = default;
};
struct PointTarget {
  std::string dimension;
  Scalar value;
  std::string measure;
  friend bool operator==(const PointTarget&, const PointTarget&) = default;
};

using AnnotationTarget = std::variant<DimensionValueTarget, MeasureThresholdTarget, PointTarget>;

struct Annotation {
  AnnotationKind kind = AnnotationKind::Note;
  AnnotationTarget target;
  std::optional<std::string> text;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct DropdownFilter {
  std::string column;
  std::vector<Scalar> values;
  friend bool operator==(const DropdownFilter&, const DropdownFilter&) = default;
};
struct SliderFilter {
  std::string column;
  double min = 0;
  double max = 0;
  friend bool operator==(const SliderFilter&, const SliderFilter&) = default;
};
struct MacroFilter {
  std::string name;
  std::vector<DataFilter> filters;
  friend bool operator==(const MacroFilter&, const MacroFilter&) = default;
};

using InteractiveFilter = std::variant<DropdownFilter, SliderFilter, MacroFilter>;

// ---------------------------------------------------------------------------
// Selections, components, snapshots
// ---------------------------------------------------------------------------

struct DashboardSelection {
  std::string panel_id;
  std::string worksheet;
  std::string data_source;
  std::vector<Measure> measures;
  std::vector<Dimension> dimensions;
  std::vector<DataFilter> data_filters;
  OriginalDesign original_design;

  friend bool operator==(const DashboardSelection&, const DashboardSelection&) = default;
};

struct ComponentSpec {
  std::string id;
  std::optional<std::string> panel;
  std::optional<std::string> worksheet;
  std::string data_source;
  std::vector<DataFilter> data_filters;
  std::vector<Measure> measures;
  std::vector<Dimension> dimensions;
  TimeFrame time_frame;
  OriginalDesign original_design;
  Appearance appearance = Appearance::Visual;
  std::optional<TemplateBinding> template_binding;
  std::optional<std::string> caption;
  std::optional<std::string> custom_text;
  std::vector<Annotation> annotations;
  std::vector<InteractiveFilter> interactive_filters;

  const Measure* find_measure(std::string_view name) const;
  const Dimension* find_dimension(std::string_view name) const;

  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

struct StackCuration {
  friend bool operator==(const StackCuration&, const StackCuration&) = default;
};
struct CarouselCuration {
  friend bool operator==(const CarouselCuration&, const CarouselCuration&) = default;
};
struct SlideshowCuration {
  int interval_seconds = 5;
  friend bool operator==(const SlideshowCuration&, const SlideshowCuration&) = default;
};
struct MiniDashboardCuration {
  int columns = 2;
  friend bool operator==(const MiniDashboardCuration&, const MiniDashboardCuration&) = default;
};

using Curation = std::variant<StackCuration, CarouselCuration, SlideshowCuration, MiniDashboardCuration>;

std::string_view curation_name(const Curation& c);

/// Either asserted by the analyst (complete/note) or requested from the
/// engine (detect = bucket granularity).
struct Completeness {
  std::optional<bool> complete;
  std::optional<std::string> note;
  std::optional<DurationUnit> detect;

  friend bool operator==(const Completeness&, const Completeness&) = default;
};

struct ManualAuthorPolicy {
  friend bool operator==(const ManualAuthorPolicy&, const ManualAuthorPolicy&) = default;
};
struct ManualViewerPolicy {
  friend bool operator==(const ManualViewerPolicy&, const ManualViewerPolicy&) = default;
};
struct RecurrenceRule {
  Duration period{1, DurationUnit::Month};
  Date until;
  TimeOfDay publish_time;
  friend bool operator==(const RecurrenceRule&, const RecurrenceRule&) = default;
};

using UpdatePolicy = std::variant<ManualAuthorPolicy, ManualViewerPolicy, RecurrenceRule>;

struct SnapshotSpec {
  std::string id;
  std::string title;
  int version = 1;
  std::vector<ComponentSpec> components;
  Curation curation;
  Date freshness;
  std::optional<Completeness> completeness;
  std::optional<std::string> text_message;
  UpdatePolicy update_policy;
  Timestamp created_at;
  std::string author;

  const ComponentSpec* find_component(std::string_view id) const;
  const RecurrenceRule* recurrence() const { return std::get_if<RecurrenceRule>(&update_policy); }

  friend bool operator==(const SnapshotSpec&, const SnapshotSpec&) = default;
};

// ---------------------------------------------------------------------------
// Enum spellings used by the YAML surface form
// ---------------------------------------------------------------------------

std::string_view name_of(MeasureKind v);
std::string_view name_of(Aggregate v);
std::string_view name_of(DimensionKind v);
std::string_view name_of(Mark v);
std::string_view name_of(Appearance v);
std::string_view name_of(AnnotationKind v);

std::optional<MeasureKind> measure_kind_from(std::string_view s);
std::optional<Aggregate> aggregate_from(std::string_view s);
std::optional<DimensionKind> dimension_kind_from(std::string_view s);
std::optional<Mark> mark_from(std::string_view s);
std::optional<Appearance> appearance_from(std::string_view s);
std::optional<AnnotationKind> annotation_kind_from(std::string_view s);

}  // namespace dashsnap
