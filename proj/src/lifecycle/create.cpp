#include "dashsnap/lifecycle/create.hpp"

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/freshness.hpp"
#include "dashsnap/core/validation.hpp"
#include "dashsnap/data/query.hpp"
#include "dashsnap/templates/applicability.hpp"
#include "dashsnap/templates/mediate.hpp"

namespace dashsnap::lifecycle {

namespace {

// Smallest n with start + n units == end, if any.
std::optional<std::int64_t> exact_steps(const Date& start, const Date& end, DurationUnit unit) {
  auto days = days_between(start, end);
  std::int64_t guess = 0;
  switch (unit) {
    case DurationUnit::Day: guess = days; break;
    case DurationUnit::Week: guess = days / 7; break;
    case DurationUnit::Month: guess = days / 30; break;
    case DurationUnit::Quarter: guess = days / 91; break;
    case DurationUnit::Year: guess = days / 365; break;
  }
  for (auto n = std::max<std::int64_t>(1, guess - 1); n <= guess + 1; ++n) {
    if (add(start, {n, unit}) == end) return n;
  }
  return std::nullopt;
}

void check_binding(const ComponentSpec& c, const Table& data, const templates::Catalog& catalog) {
  const auto& design = catalog.require(c.template_binding->design_id);
  auto shape = templates::shape_of(c, &data);
  auto unmet = templates::unmet_requirements(design.requirements, shape);
  if (!unmet.empty()) throw Error(Code::TemplateInapplicable, design.id + " " + unmet.front());

  const Dimension* nominal = nullptr;
  for (const auto& d : c.dimensions) {
    if (d.kind == DimensionKind::Nominal) {
      nominal = &d;
      break;
    }
  }
  std::vector<std::string> observed;
  std::vector<std::string> known;
  if (nominal) {
    for (const auto& v : distinct_values(data, nominal->source_column)) known.push_back(display(v));
    auto framed = apply_time_frame(apply_filters(data, c.data_filters), c.time_frame);
    for (const auto& v : distinct_values(framed, nominal->source_column)) observed.push_back(display(v));
  }
  templates::mediate_config(c, design, c.template_binding->parameters, nominal ? &observed : nullptr,
                            nominal ? &known : nullptr);
}

}  // namespace

TimeFrame frame_of(const std::string& column, const DateRangePredicate& range) {
  for (auto unit : {DurationUnit::Year, DurationUnit::Quarter, DurationUnit::Month, DurationUnit::Week}) {
    if (auto n = exact_steps(range.start, range.end, unit)) return {column, range.start, {*n, unit}};
  }
  return {column, range.start, {days_between(range.start, range.end), DurationUnit::Day}};
}

ComponentSpec create_component(const DashboardSelection& sel, const CreateOptions& options, const Table* data,
                               const templates::Catalog& catalog) {
  ComponentSpec c;
  c.id = options.id.empty() ? sel.panel_id : options.id;
  c.panel = sel.panel_id;
  if (!sel.worksheet.empty()) c.worksheet = sel.worksheet;
  c.data_source = sel.data_source;
  c.data_filters = sel.data_filters;
  c.measures = sel.measures;
  c.dimensions = sel.dimensions;
  c.original_design = sel.original_design;
  c.appearance = options.appearance;
  c.template_binding = options.template_binding;
  c.interactive_filters = options.interactive_filters;
  c.caption = options.caption;
  c.custom_text = options.custom_text;
  c.annotations = options.annotations;

  bool framed = false;
  for (const auto& f : sel.data_filters) {
    if (const auto* r = std::get_if<DateRangePredicate>(&f.predicate); r && r->end > r->start) {
      c.time_frame = frame_of(f.column, *r);
      framed = true;
      break;
    }
  }
  if (!framed) {
    if (!options.imposed_time_frame) {
      throw Error(Code::NoTimeFrame, "panel '" + sel.panel_id +
                                         "' has no date-range filter; impose a time frame to create a component");
    }
    c.time_frame = *options.imposed_time_frame;
  }

  auto report = check_component_shape(c);
  if (!report.ok()) throw ValidationError(report);
  if (c.template_binding && data) check_binding(c, *data, catalog);
  if (c.template_binding && !data) {
    templates::TemplateChecker checker(catalog);
    ValidationReport r;
    checker.check(c, "", r);
    if (!r.ok()) throw Error(r.violations.front().code, r.violations.front().message);
  }
  return c;
}

SnapshotSpec compose_snapshot(ComposeRequest request, const Clock& clock) {
  SnapshotSpec s;
  s.id = std::move(request.id);
  s.title = std::move(request.title);
  s.author = std::move(request.author);
  s.version = 1;
  s.components = std::move(request.components);
  s.curation = request.curation;
  s.update_policy = request.update_policy;
  s.created_at = clock.now();
  s.completeness = request.overrides.completeness;
  s.text_message = request.overrides.text_message;
  if (s.components.empty()) {
    ValidationReport r;
    r.add(Code::NoComponents, "components", "snapshot has no components");
    throw ValidationError(r);
  }
  s.freshness = request.overrides.freshness ? *request.overrides.freshness : infer_freshness(s.components);
  auto report = check_snapshot_shape(s);
  if (!report.ok()) throw ValidationError(report);
  return s;
}

}  // namespace dashsnap::lifecycle
