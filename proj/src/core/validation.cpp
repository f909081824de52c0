#include "dashsnap/core/validation.hpp"

#include <set>

#include "dashsnap/core/expression.hpp"

namespace dashsnap {

bool ValidationReport::has(Code code) const {
  for (const auto& v : violations) {
    if (v.code == code) return true;
  }
  return false;
}

void ValidationReport::add(Code code, std::string path, std::string message) {
  violations.push_back({code, std::move(path), std::move(message), std::nullopt});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations.insert(violations.end(), other.violations.begin(), other.violations.end());
}

std::string ValidationReport::str() const {
  std::string out;
  for (const auto& v : violations) {
    if (v.span) out += to_string(*v.span) + ": ";
    out += std::string(code_name(v.code)) + " at " + (v.path.empty() ? "<root>" : v.path) + ": " +
           v.message + "\n";
  }
  return out;
}

ValidationError::ValidationError(ValidationReport report)
    : Error(report.violations.empty() ? Code::InvalidValue : report.violations.front().code,
            report.violations.empty() ? "invalid" : report.violations.front().message),
      report_(std::move(report)) {}

std::optional<ColumnType> DataSourceSchema::type_of(std::string_view column) const {
  for (const auto& c : columns) {
    if (c.name == column) return c.type;
  }
  return std::nullopt;
}

namespace {

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

std::string index(const std::string& prefix, const std::string& key, std::size_t i) {
  return join(prefix, key) + "[" + std::to_string(i) + "]";
}

void check_measures(const std::vector<Measure>& measures, const std::string& path,
                    ValidationReport& r) {
  std::set<std::string> names;
  for (const auto& m : measures) names.insert(m.name);

  std::vector<std::pair<std::string, std::vector<std::string>>> graph;
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const auto& m = measures[i];
    auto p = index(path, "measures", i);
    if (m.name.empty()) r.add(Code::MissingField, join(p, "name"), "measure needs a name");
    switch (m.kind) {
      case MeasureKind::Column:
        if (!m.source_column || m.aggregate || m.expression) {
          r.add(Code::MeasureShape, p,
                "column measure '" + m.name + "' takes source-column only");
        }
        break;
      case MeasureKind::Aggregated:
        if (!m.source_column || !m.aggregate || m.expression) {
          r.add(Code::MeasureShape, p,
                "aggregated measure '" + m.name + "' needs source-column and aggregate");
        }
        break;
      case MeasureKind::Computed: {
        if (!m.expression || m.source_column || m.aggregate) {
          r.add(Code::MeasureShape, p, "computed measure '" + m.name + "' takes expression only");
          break;
        }
        try {
          auto e = Expression::parse(*m.expression);
          for (const auto& ref : e.references()) {
            if (!names.count(ref)) {
              r.add(Code::UnknownMeasureRef, join(p, "expression"),
                    "'" + m.name + "' references undeclared measure '" + ref + "'");
            }
          }
          graph.emplace_back(m.name, e.references());
        } catch (const Error& e) {
          r.add(Code::ExpressionSyntax, join(p, "expression"), e.what());
        }
        break;
      }
    }
  }
  if (auto cyc = find_cycle(graph)) {
    r.add(Code::CyclicMeasureRef, join(path, "measures"),
          "computed measure '" + *cyc + "' depends on itself");
  }
}

void check_filter_shape(const DataFilter& f, const std::string& p, ValidationReport& r) {
  if (f.column.empty()) r.add(Code::MissingField, join(p, "column"), "filter needs a column");
  if (auto* one = std::get_if<OneOfPredicate>(&f.predicate); one && one->values.empty()) {
    r.add(Code::InvalidValue, join(p, "one-of"), "one-of needs at least one value");
  }
  if (auto* rng = std::get_if<RangePredicate>(&f.predicate); rng && rng->min > rng->max) {
    r.add(Code::InvalidValue, join(p, "range"), "range min exceeds max");
  }
  if (auto* dr = std::get_if<DateRangePredicate>(&f.predicate); dr && !(dr->start < dr->end)) {
    r.add(Code::InvalidValue, join(p, "date-range"), "date-range end must follow start");
  }
}

void check_filter_types(const DataFilter& f, const std::string& p, const DataSourceSchema& schema,
                        ValidationReport& r) {
  auto type = schema.type_of(f.column);
  if (!type) {
    r.add(Code::UnknownColumn, join(p, "column"), "unknown column '" + f.column + "'");
    return;
  }
  auto mismatch = [&](const std::string& what) {
    r.add(Code::FilterTypeMismatch, p,
          what + " does not match " + std::string(type_name(*type)) + " column '" + f.column + "'");
  };
  std::visit(
      [&](const auto& pred) {
        using T = std::decay_t<decltype(pred)>;
        if constexpr (std::is_same_v<T, EqualsPredicate>) {
          if (!coerce(pred.value, *type)) mismatch("value '" + display(pred.value) + "'");
        } else if constexpr (std::is_same_v<T, OneOfPredicate>) {
          for (const auto& v : pred.values) {
            if (!coerce(v, *type)) mismatch("value '" + display(v) + "'");
          }
        } else if constexpr (std::is_same_v<T, RangePredicate>) {
          if (*type != ColumnType::Number) mismatch("numeric range");
        } else {
          if (*type != ColumnType::Date) mismatch("date-range");
        }
      },
      f.predicate);
}

void check_design(const OriginalDesign& d, const std::vector<Measure>& measures,
                  const std::vector<Dimension>& dims, const std::string& path, ValidationReport& r) {
  std::set<std::string> fields;
  for (const auto& m : measures) fields.insert(m.name);
  for (const auto& dim : dims) fields.insert(dim.name);
  for (const auto& [channel, field] : d.encodings) {
    if (channel != "x" && channel != "y" && channel != "color") {
      r.add(Code::InvalidValue, join(path, "encodings." + channel),
            "unsupported encoding channel '" + channel + "'");
    }
    if (!fields.count(field)) {
      r.add(Code::EncodingFieldUnknown, join(path, "encodings." + channel),
            "encoded field '" + field + "' is not a measure or dimension");
    }
  }
  for (std::size_t i = 0; i < d.scales.size(); ++i) {
    if (!fields.count(d.scales[i].field)) {
      r.add(Code::EncodingFieldUnknown, index(path, "scales", i),
            "scale field '" + d.scales[i].field + "' is not a measure or dimension");
    }
  }
}

void check_interactive_shape(const std::vector<InteractiveFilter>& filters, const std::string& path,
                             ValidationReport& r) {
  std::set<std::string> macro_names;
  for (std::size_t i = 0; i < filters.size(); ++i) {
    auto p = index(path, "interactive-filters", i);
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, DropdownFilter>) {
            if (f.values.empty()) {
              r.add(Code::InteractiveFilterInvalid, p, "dropdown on '" + f.column + "' has no values");
            }
          } else if constexpr (std::is_same_v<T, SliderFilter>) {
            if (f.min > f.max) {
              r.add(Code::InteractiveFilterInvalid, p, "slider min exceeds max");
            }
          } else {
            if (f.filters.empty()) {
              r.add(Code::InteractiveFilterInvalid, p, "macro '" + f.name + "' has no filters");
            }
            if (!macro_names.insert(f.name).second) {
              r.add(Code::InteractiveFilterInvalid, p, "duplicate macro '" + f.name + "'");
            }
            for (std::size_t j = 0; j < f.filters.size(); ++j) {
              check_filter_shape(f.filters[j], index(p + ".macro", "filters", j), r);
            }
          }
        },
        filters[i]);
  }
}

void check_annotations(const ComponentSpec& c, const std::string& path, ValidationReport& r) {
  for (std::size_t i = 0; i < c.annotations.size(); ++i) {
    auto p = index(path, "annotations", i) + ".target";
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, DimensionValueTarget>) {
            if (!c.find_dimension(t.dimension)) {
              r.add(Code::AnnotationUnresolved, p, "unknown dimension '" + t.dimension + "'");
            }
          } else if constexpr (std::is_same_v<T, MeasureThresholdTarget>) {
            if (!c.find_measure(t.measure)) {
              r.add(Code::AnnotationUnresolved, p, "unknown measure '" + t.measure + "'");
            }
          } else {
            if (!c.find_dimension(t.dimension)) {
              r.add(Code::AnnotationUnresolved, p, "unknown dimension '" + t.dimension + "'");
            }
            if (!c.find_measure(t.measure)) {
              r.add(Code::AnnotationUnresolved, p, "unknown measure '" + t.measure + "'");
            }
          }
        },
        c.annotations[i].target);
  }
}

void check_columns(const std::vector<Measure>& measures, const std::vector<Dimension>& dims,
                   const std::vector<DataFilter>& filters, const std::string& path,
                   const DataSourceSchema& schema, ValidationReport& r) {
  for (std::size_t i = 0; i < filters.size(); ++i) {
    check_filter_types(filters[i], index(path, "data-filters", i), schema, r);
  }
  for (std::size_t i = 0; i < measures.size(); ++i) {
    const auto& m = measures[i];
    if (!m.source_column) continue;
    auto p = index(path, "measures", i) + ".source-column";
    auto type = schema.type_of(*m.source_column);
    if (!type) {
      r.add(Code::UnknownColumn, p, "unknown column '" + *m.source_column + "'");
    } else if (*type != ColumnType::Number && m.aggregate != Aggregate::Count) {
      r.add(Code::TypeMismatch, p, "measure '" + m.name + "' needs a number column");
    }
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto& d = dims[i];
    auto p = index(path, "dimensions", i) + ".source-column";
    auto type = schema.type_of(d.source_column);
    if (!type) {
      r.add(Code::UnknownColumn, p, "unknown column '" + d.source_column + "'");
    } else if (d.kind == DimensionKind::Temporal && *type != ColumnType::Date) {
      r.add(Code::TemporalFieldRequired, p, "temporal dimension '" + d.name + "' needs a date column");
    }
  }
}

}  // namespace

ValidationReport check_component_shape(const ComponentSpec& c, const std::string& path) {
  ValidationReport r;
  if (c.id.empty()) r.add(Code::MissingField, join(path, "id"), "component needs an id");
  if (c.data_source.empty()) r.add(Code::MissingField, join(path, "data-source"), "data-source missing");
  if (c.measures.empty()) {
    r.add(Code::NoMeasuresOrDimensions, join(path, "measures"), "component needs at least one measure");
  }
  check_measures(c.measures, path, r);
  for (std::size_t i = 0; i < c.data_filters.size(); ++i) {
    check_filter_shape(c.data_filters[i], index(path, "data-filters", i), r);
  }
  if (c.time_frame.field.empty()) {
    r.add(Code::MissingField, join(path, "time-frame.field"), "time frame needs a field");
  }
  if (c.time_frame.duration.count < 1) {
    r.add(Code::DurationInvalid, join(path, "time-frame.duration"), "duration count must be >= 1");
  } else if (!(c.time_frame.start < c.time_frame.end())) {
    r.add(Code::TimeFrameInvalid, join(path, "time-frame"), "time frame end must follow start");
  }
  check_design(c.original_design, c.measures, c.dimensions, join(path, "original-design"), r);
  if (!c.template_binding && c.appearance == Appearance::Text) {
    r.add(Code::AppearanceRequiresVisual, join(path, "appearance"),
          "without a template the original design must be shown");
  }
  check_annotations(c, path, r);
  check_interactive_shape(c.interactive_filters, path, r);
  return r;
}

ValidationReport check_selection_shape(const DashboardSelection& s, const std::string& path) {
  ValidationReport r;
  if (s.panel_id.empty()) r.add(Code::MissingField, join(path, "panel"), "panel needs an id");
  if (s.measures.empty() && s.dimensions.empty()) {
    r.add(Code::NoMeasuresOrDimensions, path, "panel '" + s.panel_id + "' shows no measure or dimension");
  }
  check_measures(s.measures, path, r);
  for (std::size_t i = 0; i < s.data_filters.size(); ++i) {
    check_filter_shape(s.data_filters[i], index(path, "data-filters", i), r);
  }
  check_design(s.original_design, s.measures, s.dimensions, join(path, "original-design"), r);
  return r;
}

ValidationReport check_unique_panels(const std::vector<DashboardSelection>& panels) {
  ValidationReport r;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (!seen.insert(panels[i].panel_id).second) {
      r.add(Code::DuplicatePanelId, index("", "panels", i), "duplicate panel id '" + panels[i].panel_id + "'");
    }
  }
  return r;
}

ValidationReport check_snapshot_shape(const SnapshotSpec& s) {
  ValidationReport r;
  if (s.id.empty()) r.add(Code::MissingField, "id", "snapshot needs an id");
  if (s.components.empty()) r.add(Code::NoComponents, "components", "snapshot has no components");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    auto p = index("", "components", i);
    if (!ids.insert(s.components[i].id).second) {
      r.add(Code::DuplicateComponentId, join(p, "id"), "duplicate component id '" + s.components[i].id + "'");
    }
    r.merge(check_component_shape(s.components[i], p));
  }
  if (auto* sl = std::get_if<SlideshowCuration>(&s.curation); sl && sl->interval_seconds < 1) {
    r.add(Code::CurationInvalid, "curation", "slideshow interval must be >= 1 second");
  }
  if (auto* md = std::get_if<MiniDashboardCuration>(&s.curation); md && md->columns < 1) {
    r.add(Code::CurationInvalid, "curation", "mini-dashboard needs at least one column");
  }
  if (s.version < 1) r.add(Code::InvalidValue, "version", "version must be >= 1");
  if (s.completeness) {
    const auto& c = *s.completeness;
    if (c.complete.has_value() == c.detect.has_value()) {
      r.add(Code::CompletenessInvalid, "completeness",
            "completeness is either asserted (complete) or detected (detect)");
    }
  }
  if (const auto* rule = s.recurrence()) {
    if (rule->period.count < 1) {
      r.add(Code::DurationInvalid, "update-policy.auto-recur.period", "recurrence period must be >= 1");
    }
    if (!(rule->until > s.created_at.date())) {
      r.add(Code::RecurrenceHorizonInvalid, "update-policy.auto-recur.until",
            "recurrence horizon " + rule->until.iso() + " is not after creation " +
                s.created_at.date().iso());
    }
  }
  return r;
}

ValidationReport validate_component(const ComponentSpec& c, const DataSourceSchema& schema,
                                    const std::string& path) {
  ValidationReport r = check_component_shape(c, path);
  check_columns(c.measures, c.dimensions, c.data_filters, path, schema, r);
  auto tf_type = schema.type_of(c.time_frame.field);
  if (!tf_type) {
    r.add(Code::UnknownColumn, join(path, "time-frame.field"),
          "unknown time frame field '" + c.time_frame.field + "'");
  } else if (*tf_type != ColumnType::Date) {
    r.add(Code::TemporalFieldRequired, join(path, "time-frame"),
          "time frame field '" + c.time_frame.field + "' is not a date column");
  }
  for (std::size_t i = 0; i < c.interactive_filters.size(); ++i) {
    auto p = index(path, "interactive-filters", i);
    std::visit(
        [&](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, DropdownFilter>) {
            auto type = schema.type_of(f.column);
            if (!type) {
              r.add(Code::InteractiveFilterInvalid, p, "dropdown column '" + f.column + "' not in data source");
              return;
            }
            for (const auto& v : f.values) {
              if (!coerce(v, *type)) {
                r.add(Code::FilterTypeMismatch, p, "dropdown value '" + display(v) + "' has the wrong type");
              }
            }
          } else if constexpr (std::is_same_v<T, SliderFilter>) {
            auto type = schema.type_of(f.column);
            if (!type) {
              r.add(Code::InteractiveFilterInvalid, p, "slider column '" + f.column + "' not in data source");
            } else if (*type != ColumnType::Number) {
              r.add(Code::FilterTypeMismatch, p, "slider column '" + f.column + "' is not numeric");
            }
          } else {
            for (std::size_t j = 0; j < f.filters.size(); ++j) {
              check_filter_types(f.filters[j], index(p + ".macro", "filters", j), schema, r);
            }
          }
        },
        c.interactive_filters[i]);
  }
  return r;
}

ValidationReport validate_selection(const DashboardSelection& s, const DataSourceSchema& schema,
                                    const std::string& path) {
  ValidationReport r = check_selection_shape(s, path);
  check_columns(s.measures, s.dimensions, s.data_filters, path, schema, r);
  return r;
}

ValidationReport validate_snapshot(const SnapshotSpec& s, const SchemaResolver& registry,
                                   const ComponentChecker* checker) {
  ValidationReport r;
  if (s.components.empty()) r.add(Code::NoComponents, "components", "snapshot has no components");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.components.size(); ++i) {
    const auto& c = s.components[i];
    auto p = index("", "components", i);
    if (!ids.insert(c.id).second) {
      r.add(Code::DuplicateComponentId, join(p, "id"), "duplicate component id '" + c.id + "'");
    }
    auto schema = registry.schema_of(c.data_source);
    if (!schema) {
      r.add(Code::UnknownDataSource, join(p, "data-source"), "unknown data source '" + c.data_source + "'");
      r.merge(check_component_shape(c, p));
    } else {
      r.merge(validate_component(c, *schema, p));
    }
    if (checker) checker->check(c, p, r);
  }
  // snapshot-level checks, minus the per-component ones already merged above
  auto shape = check_snapshot_shape(s);
  for (auto& v : shape.violations) {
    if (v.path.rfind("components", 0) == 0) continue;
    if (v.code == Code::NoComponents) continue;
    r.violations.push_back(std::move(v));
  }
  return r;
}

}  // namespace dashsnap
