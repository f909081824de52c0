#include <algorithm>

#include "dashsnap/core/freshness.hpp"
#include "dashsnap/spec_io/spec_io.hpp"
#include "dashsnap/spec_io/yaml_scalar.hpp"

namespace dashsnap::spec_io {

Annotation read_annotation(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"kind", "target", "text"});
  Annotation a;
  auto kind_node = m.require("kind");
  auto kind = annotation_kind_from(read_text(kind_node));
  if (!kind) fail(Code::InvalidValue, kind_node, "annotation kind must be highlight, reference-line or note");
  a.kind = *kind;
  auto tn = m.require("target");
  MapReader t(tn, m.path("target"), ctx, {"dimension", "measure", "value"});
  bool dim = t.has("dimension");
  bool meas = t.has("measure");
  auto value = t.require("value");
  if (dim && meas) {
    a.target = PointTarget{read_identifier(*t.get("dimension")), read_scalar(value),
                           read_identifier(*t.get("measure"))};
  } else if (dim) {
    a.target = DimensionValueTarget{read_identifier(*t.get("dimension")), read_scalar(value)};
  } else if (meas) {
    a.target = MeasureThresholdTarget{read_identifier(*t.get("measure")), read_number(value)};
  } else {
    fail(Code::MissingField, tn, "annotation target needs a dimension, a measure, or both");
  }
  if (auto n = m.get("text")) a.text = read_text(*n);
  return a;
}

InteractiveFilter read_interactive(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"dropdown", "slider", "macro"});
  if (m.has("dropdown") + m.has("slider") + m.has("macro") != 1) {
    fail(Code::InvalidValue, node, "interactive filter is exactly one of dropdown, slider, macro");
  }
  if (auto n = m.get("dropdown")) {
    MapReader d(*n, m.path("dropdown"), ctx, {"column", "values"});
    DropdownFilter f;
    f.column = read_identifier(d.require("column"));
    for (const auto& v : read_sequence(d.require("values"), d.path("values"), ctx)) {
      f.values.push_back(read_scalar(v));
    }
    return f;
  }
  if (auto n = m.get("slider")) {
    MapReader s(*n, m.path("slider"), ctx, {"column", "min", "max"});
    return SliderFilter{read_identifier(s.require("column")), read_number(s.require("min")),
                        read_number(s.require("max"))};
  }
  auto n = *m.get("macro");
  MapReader mm(n, m.path("macro"), ctx, {"name", "filters"});
  MacroFilter f;
  f.name = read_identifier(mm.require("name"));
  f.filters = read_list<DataFilter>(mm.require("filters"), mm.path("filters"), ctx, read_filter);
  return f;
}

namespace {

ParamValue read_param(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  if (node.IsMap()) {
    std::map<std::string, double> per_category;
    for (auto it = node.begin(); it != node.end(); ++it) {
      auto key = read_text(it->first);
      ctx.record(child_path(path, key), it->first);
      if (per_category.count(key)) fail(Code::InvalidValue, it->first, "duplicate category '" + key + "'");
      per_category[key] = read_number(it->second);
    }
    return per_category;
  }
  auto v = read_scalar(node);
  if (auto* d = std::get_if<double>(&v)) return *d;
  return read_text(node);
}

}  // namespace

TemplateBinding read_template(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"design", "template-config"});
  TemplateBinding b;
  b.design_id = read_identifier(m.require("design"));
  if (auto cfg = m.get("template-config")) {
    MapReader c(*cfg, m.path("template-config"), ctx, {"parameters"});
    if (auto params = c.get("parameters")) {
      if (!params->IsMap()) fail(Code::TypeMismatch, *params, "parameters must be a mapping");
      for (auto it = params->begin(); it != params->end(); ++it) {
        auto key = read_identifier(it->first);
        auto p = child_path(c.path("parameters"), key);
        ctx.record(p, it->first);
        if (b.parameters.count(key)) fail(Code::InvalidValue, it->first, "duplicate parameter '" + key + "'");
        b.parameters[key] = read_param(it->second, p, ctx);
      }
    }
  }
  return b;
}

ComponentSpec read_component(const YAML::Node& node, const std::string& path, ReadContext& ctx,
                             bool top_level) {
  std::initializer_list<std::string_view> keys{
      "spec-version", "id", "panel", "worksheet", "data-source", "data-filters", "measures",
      "dimensions", "time-frame", "original-design", "appearance", "template", "caption",
      "custom-text", "annotations", "interactive-filters"};
  MapReader m(node, path, ctx, keys);
  if (!top_level && m.has("spec-version")) {
    fail(Code::UnknownKey, *m.get("spec-version"), "spec-version belongs at the document root");
  }
  ComponentSpec c;
  c.id = read_identifier(m.require("id"));
  if (auto n = m.get("panel")) c.panel = read_identifier(*n);
  if (auto n = m.get("worksheet")) c.worksheet = read_text(*n);
  c.data_source = read_identifier(m.require("data-source"));
  if (auto n = m.get("data-filters")) {
    c.data_filters = read_list<DataFilter>(*n, m.path("data-filters"), ctx, read_filter);
  }
  c.measures = read_list<Measure>(m.require("measures"), m.path("measures"), ctx, read_measure);
  if (auto n = m.get("dimensions")) {
    c.dimensions = read_list<Dimension>(*n, m.path("dimensions"), ctx, read_dimension);
  }
  c.time_frame = read_time_frame(m.require("time-frame"), m.path("time-frame"), ctx);
  c.original_design = read_design(m.require("original-design"), m.path("original-design"), ctx);
  if (auto n = m.get("appearance")) {
    auto a = appearance_from(read_text(*n));
    if (!a) fail(Code::InvalidValue, *n, "appearance must be visual, text or both");
    c.appearance = *a;
  }
  if (auto n = m.get("template")) c.template_binding = read_template(*n, m.path("template"), ctx);
  if (auto n = m.get("caption")) c.caption = read_text(*n);
  if (auto n = m.get("custom-text")) c.custom_text = read_text(*n);
  if (auto n = m.get("annotations")) {
    c.annotations = read_list<Annotation>(*n, m.path("annotations"), ctx, read_annotation);
  }
  if (auto n = m.get("interactive-filters")) {
    c.interactive_filters =
        read_list<InteractiveFilter>(*n, m.path("interactive-filters"), ctx, read_interactive);
  }
  return c;
}

Curation read_curation(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  if (node.IsScalar()) {
    const auto& s = node.Scalar();
    if (s == "stack") return StackCuration{};
    if (s == "carousel") return CarouselCuration{};
    if (s == "slideshow") return SlideshowCuration{};
    if (s == "mini-dashboard") return MiniDashboardCuration{};
    fail(Code::CurationInvalid, node, "curation must be stack, carousel, slideshow or mini-dashboard");
  }
  MapReader m(node, path, ctx, {"stack", "carousel", "slideshow", "mini-dashboard"});
  if (m.node().size() != 1) fail(Code::InvalidValue, node, "curation names exactly one method");
  if (m.has("stack")) return StackCuration{};
  if (m.has("carousel")) return CarouselCuration{};
  if (auto n = m.get("slideshow")) {
    MapReader s(*n, m.path("slideshow"), ctx, {"interval"});
    SlideshowCuration c;
    if (auto i = s.get("interval")) c.interval_seconds = read_int(*i);
    return c;
  }
  auto n = *m.get("mini-dashboard");
  MapReader md(n, m.path("mini-dashboard"), ctx, {"columns"});
  MiniDashboardCuration c;
  if (auto i = md.get("columns")) c.columns = read_int(*i);
  return c;
}

UpdatePolicy read_policy(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  if (node.IsScalar()) {
    const auto& s = node.Scalar();
    if (s == "manual-author") return ManualAuthorPolicy{};
    if (s == "manual-viewer") return ManualViewerPolicy{};
    fail(Code::InvalidValue, node, "update-policy must be manual-author, manual-viewer or auto-recur");
  }
  MapReader m(node, path, ctx, {"auto-recur"});
  MapReader r(m.require("auto-recur"), m.path("auto-recur"), ctx, {"period", "until", "publish-time"});
  RecurrenceRule rule;
  rule.period = read_duration(r.require("period"));
  rule.until = read_date(r.require("until"));
  rule.publish_time = read_time(r.require("publish-time"));
  return rule;
}

Completeness read_completeness(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"complete", "note", "detect"});
  Completeness c;
  if (auto n = m.get("complete")) c.complete = read_bool(*n);
  if (auto n = m.get("note")) c.note = read_text(*n);
  if (auto n = m.get("detect")) c.detect = read_unit(*n);
  return c;
}

namespace {

void check_spec_version(const MapReader& m) {
  if (auto n = m.get("spec-version")) {
    if (read_int(*n) != kSpecVersion) {
      fail(Code::UnsupportedVersion, *n, "unsupported spec-version " + read_text(*n));
    }
  }
}

SnapshotSpec read_snapshot(const YAML::Node& node, ReadContext& ctx) {
  MapReader m(node, "", ctx,
              {"spec-version", "id", "title", "version", "components", "curation", "freshness",
               "completeness", "text-message", "update-policy", "created-at", "author"});
  check_spec_version(m);
  SnapshotSpec s;
  s.id = read_identifier(m.require("id"));
  s.title = m.has("title") ? read_text(*m.get("title")) : std::string{};
  if (auto n = m.get("version")) s.version = read_int(*n);
  s.components = read_list<ComponentSpec>(
      m.require("components"), "components", ctx,
      [](const YAML::Node& n, const std::string& p, ReadContext& c) { return read_component(n, p, c, false); });
  s.curation = m.has("curation") ? read_curation(*m.get("curation"), "curation", ctx) : Curation{StackCuration{}};
  if (auto n = m.get("freshness")) {
    s.freshness = read_date(*n);
  } else if (!s.components.empty()) {
    s.freshness = infer_freshness(s.components);
  }
  if (auto n = m.get("completeness")) s.completeness = read_completeness(*n, "completeness", ctx);
  if (auto n = m.get("text-message")) s.text_message = read_text(*n);
  s.update_policy = read_policy(m.require("update-policy"), "update-policy", ctx);
  s.created_at = read_timestamp(m.require("created-at"));
  if (auto n = m.get("author")) s.author = read_identifier(*n);
  return s;
}

[[noreturn]] void throw_first(const ValidationReport& report, const SpecDocument& doc) {
  const auto& v = report.violations.front();
  throw ParseError(v.code, v.message + " (at " + (v.path.empty() ? "<root>" : v.path) + ")",
                   doc.span_for(v.path).value_or(SourceSpan{1, 1}));
}

}  // namespace

std::optional<SourceSpan> SpecDocument::span_for(const std::string& path) const {
  std::string p = path;
  for (;;) {
    if (auto it = source_spans.find(p); it != source_spans.end()) return it->second;
    if (p.empty()) return std::nullopt;
    auto cut = p.find_last_of(".[");
    p = cut == std::string::npos ? std::string{} : p.substr(0, cut);
  }
}

void SpecDocument::attach_spans(ValidationReport& report) const {
  for (auto& v : report.violations) {
    if (!v.span) v.span = span_for(v.path).value_or(SourceSpan{1, 1});
  }
}

SpecDocument parse_document(std::string_view text) {
  auto root = load_document(text);
  SpecDocument doc;
  doc.raw_text = std::string(text);
  ReadContext ctx;
  ctx.record("", root);
  const YAML::Node& croot = root;
  if (croot.IsMap() && croot["components"]) {
    doc.parsed = read_snapshot(root, ctx);
  } else {
    if (root.IsMap()) {
      MapReader probe(root, "", ctx,
                      {"spec-version", "id", "panel", "worksheet", "data-source", "data-filters", "measures",
                       "dimensions", "time-frame", "original-design", "appearance", "template", "caption",
                       "custom-text", "annotations", "interactive-filters"});
      check_spec_version(probe);
    }
    doc.parsed = read_component(root, "", ctx, true);
  }
  doc.source_spans = std::move(ctx.spans());
  return doc;
}

SnapshotSpec parse_snapshot(std::string_view text) {
  auto doc = parse_document(text);
  if (!doc.is_snapshot()) {
    throw ParseError(Code::MissingField, "not a snapshot document: missing 'components'", {1, 1});
  }
  auto& s = std::get<SnapshotSpec>(doc.parsed);
  auto report = check_snapshot_shape(s);
  if (!report.ok()) throw_first(report, doc);
  return std::move(s);
}

ComponentSpec parse_component(std::string_view text) {
  auto doc = parse_document(text);
  if (doc.is_snapshot()) {
    throw ParseError(Code::UnknownKey, "expected a component document, found a snapshot", {1, 1});
  }
  auto& c = std::get<ComponentSpec>(doc.parsed);
  auto report = check_component_shape(c);
  if (!report.ok()) throw_first(report, doc);
  return std::move(c);
}

}  // namespace dashsnap::spec_io
