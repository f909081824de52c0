#include "dashsnap/service/json_spec.hpp"

#include <cmath>

#include "dashsnap/spec_io/spec_io.hpp"
#include "dashsnap/spec_io/yaml_scalar.hpp"

namespace dashsnap::service {

using spec_io::MapReader;
using spec_io::ReadContext;

namespace {

json number_json(double v) {
  if (std::floor(v) == v && std::fabs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

json scalar_json(const Scalar& s) {
  if (const auto* d = std::get_if<double>(&s)) return number_json(*d);
  if (const auto* t = std::get_if<std::string>(&s)) return *t;
  return std::get<Date>(s).iso();
}

json choice_json(const platform::FilterChoice& choice) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, platform::DropdownChoice>) {
          json values = json::array();
          for (const auto& v : c.values) values.push_back(scalar_json(v));
          return {{"kind", "dropdown"}, {"column", c.column}, {"values", values}};
        } else if constexpr (std::is_same_v<T, platform::SliderChoice>) {
          return {{"kind", "slider"}, {"column", c.column}, {"min", number_json(c.min)}, {"max", number_json(c.max)}};
        } else {
          return {{"kind", "macro"}, {"name", c.name}};
        }
      },
      choice);
}

void walk_spans(const YAML::Node& node, const std::string& path, std::map<std::string, SourceSpan>& out) {
  out[path] = spec_io::span_of(node);
  if (node.IsMap()) {
    for (const auto& kv : node) {
      walk_spans(kv.second, spec_io::child_path(path, kv.first.Scalar()), out);
    }
  } else if (node.IsSequence()) {
    for (std::size_t i = 0; i < node.size(); ++i) walk_spans(node[i], spec_io::item_path(path, i), out);
  }
}

std::optional<std::string> nullable_text(const YAML::Node& node) {
  if (node.IsNull()) return std::nullopt;
  return spec_io::read_text(node);
}

// ISO date text in a string scalar, as a date.
void coerce(Scalar& s) {
  const auto* text = std::get_if<std::string>(&s);
  if (!text || text->size() != 10) return;
  if (auto d = Date::parse(*text)) s = *d;
}

void coerce_filters(std::vector<DataFilter>& filters, const DataSourceSchema& schema) {
  for (auto& f : filters) {
    if (schema.type_of(f.column) != ColumnType::Date) continue;
    if (auto* eq = std::get_if<EqualsPredicate>(&f.predicate)) coerce(eq->value);
    if (auto* one = std::get_if<OneOfPredicate>(&f.predicate)) {
      for (auto& v : one->values) coerce(v);
    }
  }
}

}  // namespace

json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Sequence: {
      json out = json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Map: {
      json out = json::object();
      for (const auto& kv : node) out[kv.first.Scalar()] = yaml_to_json(kv.second);
      return out;
    }
    case YAML::NodeType::Scalar:
      break;
  }
  const auto& text = node.Scalar();
  if (node.Tag() == "!") return text;
  if (text == "true") return true;
  if (text == "false") return false;
  auto v = spec_io::classify_plain(text);
  if (const auto* d = std::get_if<double>(&v)) return number_json(*d);
  return text;
}

json spec_json(const SnapshotSpec& s) { return yaml_to_json(YAML::Load(spec_io::serialize_snapshot(s))); }

json component_json(const ComponentSpec& c) {
  auto out = yaml_to_json(YAML::Load(spec_io::serialize_component(c)));
  out.erase("spec-version");
  return out;
}

json selection_json(const DashboardSelection& s) {
  ComponentSpec c;
  c.id = s.panel_id;
  c.panel = s.panel_id;
  c.worksheet = s.worksheet;
  c.data_source = s.data_source;
  c.measures = s.measures;
  c.dimensions = s.dimensions;
  c.data_filters = s.data_filters;
  c.original_design = s.original_design;
  auto out = component_json(c);
  for (const auto* key : {"id", "time-frame", "appearance"}) out.erase(key);
  if (s.worksheet.empty()) out.erase("worksheet");
  return out;
}

json dashboard_json(const spec_io::DashboardDescriptor& d) {
  json sources = json::array();
  for (const auto& src : d.data_sources) {
    json j{{"id", src.id}, {"path", src.path}};
    if (src.schema) j["schema"] = *src.schema;
    sources.push_back(std::move(j));
  }
  json panels = json::array();
  for (const auto& p : d.panels) panels.push_back(selection_json(p));
  return {{"id", d.id}, {"title", d.title}, {"data-sources", sources}, {"panels", panels}};
}

json design_json(const templates::TemplateDesign& d) {
  const auto& r = d.requirements;
  json params = json::array();
  for (const auto& p : d.parameters) {
    params.push_back({{"name", p.name}, {"type", templates::param_type_name(p.type)}, {"required", p.required}});
  }
  return {{"id", d.id},
          {"intent", d.intent},
          {"requirements",
           {{"measures", r.measures},
            {"nominal", {r.nominal_min, r.nominal_max}},
            {"temporal", {r.temporal_min, r.temporal_max}},
            {"category-cap", r.category_cap}}},
          {"parameters", params}};
}

json applicable_json(const std::vector<templates::ApplicableTemplate>& list) {
  json out = json::array();
  for (const auto& a : list) out.push_back({{"design", a.design_id}, {"missing", a.missing_params}});
  return out;
}

json span_json(const std::optional<SourceSpan>& span) {
  if (!span) return nullptr;
  return {{"line", span->line}, {"column", span->column}};
}

json report_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back(
        {{"code", code_name(v.code)}, {"path", v.path}, {"message", v.message}, {"span", span_json(v.span)}});
  }
  return {{"ok", report.ok()}, {"violations", violations}};
}

json choices_json(const platform::ComponentChoices& choices) {
  json out = json::object();
  for (const auto& [component, by_key] : choices) {
    for (const auto& [key, choice] : by_key) out[component][key] = choice_json(choice);
  }
  return out;
}

json tick_json(const platform::TickReport& r) {
  json out{{"snapshot-id", r.snapshot_id}, {"version", r.version}, {"messages", r.message_ids}};
  out["error"] = r.error ? json(*r.error) : json(nullptr);
  return out;
}

json dissemination_json(const std::vector<platform::DisseminationEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) {
    json j{{"channel", e.channel_id}, {"message", e.message_id}, {"version", e.version}, {"posted-at", e.posted_at.iso()}};
    j["thread"] = e.thread_root ? json(*e.thread_root) : json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

YAML::Node load_body(std::string_view body) {
  auto node = spec_io::load_document(body.empty() ? std::string_view("{}") : body);
  if (!node.IsMap()) spec_io::fail(Code::TypeMismatch, node, "request body must be a JSON object");
  return node;
}

std::string body_text(const YAML::Node& body, std::string_view key) {
  auto n = body[std::string(key)];
  if (!n) spec_io::fail(Code::MissingField, body, "missing field '" + std::string(key) + "'");
  return spec_io::read_identifier(n);
}

std::optional<std::string> body_optional_text(const YAML::Node& body, std::string_view key) {
  auto n = body[std::string(key)];
  if (!n || n.IsNull()) return std::nullopt;
  return spec_io::read_text(n);
}

platform::FilterChoice read_choice(const YAML::Node& node) {
  ReadContext ctx;
  MapReader m(node, "choice", ctx, {"kind", "column", "values", "min", "max", "name"});
  auto kind_node = m.require("kind");
  auto kind = spec_io::read_text(kind_node);
  if (kind == "dropdown") {
    platform::DropdownChoice c{spec_io::read_identifier(m.require("column")), {}};
    c.values = spec_io::read_list<Scalar>(m.require("values"), m.path("values"), ctx,
                                          [](const YAML::Node& n, const std::string&, ReadContext&) {
                                            return spec_io::read_scalar(n);
                                          });
    return c;
  }
  if (kind == "slider") {
    return platform::SliderChoice{spec_io::read_identifier(m.require("column")),
                                  spec_io::read_number(m.require("min")), spec_io::read_number(m.require("max"))};
  }
  if (kind == "macro") return platform::MacroChoice{spec_io::read_text(m.require("name"))};
  spec_io::fail(Code::InvalidValue, kind_node, "choice kind must be dropdown, slider or macro");
}

lifecycle::ManualEdits read_edits(const YAML::Node& body) {
  ReadContext ctx;
  MapReader m(body, "", ctx,
              {"author", "time-frames", "annotations", "captions", "custom-texts", "text-message", "freshness"});
  lifecycle::ManualEdits edits;
  if (auto n = m.get("author")) edits.author = spec_io::read_identifier(*n);
  if (auto n = m.get("time-frames")) {
    for (const auto& kv : *n) {
      auto id = kv.first.Scalar();
      edits.time_frames[id] = spec_io::read_time_frame(kv.second, "time-frames." + id, ctx);
    }
  }
  if (auto n = m.get("annotations")) {
    for (const auto& kv : *n) {
      auto id = kv.first.Scalar();
      edits.annotations[id] =
          spec_io::read_list<Annotation>(kv.second, "annotations." + id, ctx, spec_io::read_annotation);
    }
  }
  if (auto n = m.get("captions")) {
    for (const auto& kv : *n) edits.captions[kv.first.Scalar()] = nullable_text(kv.second);
  }
  if (auto n = m.get("custom-texts")) {
    for (const auto& kv : *n) edits.custom_texts[kv.first.Scalar()] = nullable_text(kv.second);
  }
  if (auto n = m.get("text-message")) edits.text_message = nullable_text(*n);
  if (auto n = m.get("freshness")) edits.freshness = spec_io::read_date(*n);
  return edits;
}

void coerce_scalars(ComponentSpec& c, const SchemaResolver& schemas) {
  auto schema = schemas.schema_of(c.data_source);
  if (!schema) return;
  coerce_filters(c.data_filters, *schema);
  auto is_date_dimension = [&](const std::string& name) {
    const auto* d = c.find_dimension(name);
    return schema->type_of(d ? d->source_column : name) == ColumnType::Date;
  };
  for (auto& f : c.interactive_filters) {
    if (auto* d = std::get_if<DropdownFilter>(&f)) {
      if (schema->type_of(d->column) == ColumnType::Date) {
        for (auto& v : d->values) coerce(v);
      }
    } else if (auto* m = std::get_if<MacroFilter>(&f)) {
      coerce_filters(m->filters, *schema);
    }
  }
  for (auto& a : c.annotations) {
    if (auto* t = std::get_if<DimensionValueTarget>(&a.target)) {
      if (is_date_dimension(t->dimension)) coerce(t->value);
    } else if (auto* p = std::get_if<PointTarget>(&a.target)) {
      if (is_date_dimension(p->dimension)) coerce(p->value);
    }
  }
}

std::map<std::string, SourceSpan> body_spans(const YAML::Node& body) {
  std::map<std::string, SourceSpan> out;
  walk_spans(body, "", out);
  return out;
}

void attach_spans(ValidationReport& report, const std::map<std::string, SourceSpan>& spans) {
  spec_io::SpecDocument doc;
  doc.source_spans = spans;
  doc.attach_spans(report);
}

}  // namespace dashsnap::service
