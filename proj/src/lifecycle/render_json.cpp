#include "dashsnap/lifecycle/snapshot_render.hpp"

#include "dashsnap/core/error.hpp"

namespace dashsnap::lifecycle {

using nlohmann::json;

namespace {

RenderNode transparency_node(const Transparency& t) {
  auto node = RenderNode::group("transparency");
  node.children.push_back(RenderNode::caption("time-frame", t.time_frame));
  for (const auto& f : t.filters) node.children.push_back(RenderNode::caption("filter", f));
  for (const auto& f : t.viewer_filters) node.children.push_back(RenderNode::caption("viewer-filter", f));
  return node;
}

std::string completeness_text(const CompletenessBadge& b) {
  std::string out = b.complete ? "Complete" : "Incomplete";
  if (!b.missing.empty()) {
    out += ": missing ";
    for (std::size_t i = 0; i < b.missing.size(); ++i) out += (i ? ", " : "") + b.missing[i];
  }
  if (b.note) out += " (" + *b.note + ")";
  return out;
}

json curation_json(const Curation& c) {
  json out{{"kind", std::string(curation_name(c))}};
  if (const auto* s = std::get_if<SlideshowCuration>(&c)) out["interval-seconds"] = s->interval_seconds;
  if (const auto* m = std::get_if<MiniDashboardCuration>(&c)) out["columns"] = m->columns;
  return out;
}

}  // namespace

RenderNode SnapshotRender::layout() const {
  auto root = RenderNode::group(std::string(curation_name(curation)));
  if (const auto* s = std::get_if<SlideshowCuration>(&curation)) {
    root.content = "interval " + std::to_string(s->interval_seconds) + "s";
  } else if (const auto* m = std::get_if<MiniDashboardCuration>(&curation)) {
    root.content = "columns " + std::to_string(m->columns);
  }
  root.children.push_back(freshness.stale
                              ? RenderNode::badge("stale", "Stale: data was fresh until " + freshness.fresh_until.iso())
                              : RenderNode::badge("fresh", "Fresh until " + freshness.fresh_until.iso()));
  if (completeness) root.children.push_back(RenderNode::badge("completeness", completeness_text(*completeness)));
  if (text_message) root.children.push_back(RenderNode::caption("text-message", *text_message));
  for (const auto& c : components) {
    auto group = RenderNode::group("component");
    group.content = c.component_id;
    group.children.push_back(transparency_node(c.transparency));
    group.children.push_back(c.body);
    root.children.push_back(std::move(group));
  }
  return root;
}

bool SnapshotRender::has_errors() const {
  for (const auto& c : components) {
    if (c.error) return true;
  }
  return false;
}

json to_json(const RenderNode& node) {
  json out{{"kind", std::string(templates::node_kind_name(node.kind))}, {"role", node.role}};
  if (!node.content.empty()) out["content"] = node.content;
  if (node.width > 0) out["width"] = node.width;
  if (node.height > 0) out["height"] = node.height;
  if (!node.children.empty()) {
    json children = json::array();
    for (const auto& c : node.children) children.push_back(to_json(c));
    out["children"] = std::move(children);
  }
  return out;
}

json to_json(const SnapshotRender& r) {
  json components = json::array();
  for (const auto& c : r.components) {
    json item{{"id", c.component_id},
              {"transparency",
               {{"filters", c.transparency.filters},
                {"viewer-filters", c.transparency.viewer_filters},
                {"time-frame", c.transparency.time_frame}}},
              {"warnings", c.warnings},
              {"body", to_json(c.body)}};
    item["error"] = c.error ? json(*c.error) : json(nullptr);
    components.push_back(std::move(item));
  }
  json out{{"snapshot-id", r.snapshot_id},
           {"title", r.title},
           {"version", r.version},
           {"curation", curation_json(r.curation)},
           {"freshness", {{"fresh-until", r.freshness.fresh_until.iso()}, {"stale", r.freshness.stale}}},
           {"produced-at", r.produced_at.iso()},
           {"components", std::move(components)},
           {"layout", to_json(r.layout())}};
  if (r.completeness) {
    out["completeness"] = {{"complete", r.completeness->complete},
                           {"detected", r.completeness->detected},
                           {"missing", r.completeness->missing}};
    if (r.completeness->note) out["completeness"]["note"] = *r.completeness->note;
  } else {
    out["completeness"] = nullptr;
  }
  out["text-message"] = r.text_message ? json(*r.text_message) : json(nullptr);
  return out;
}

std::string render_bytes(const SnapshotRender& render) { return to_json(render).dump(); }

namespace {

templates::NodeKind node_kind_from(const std::string& name) {
  for (auto k : {templates::NodeKind::SvgChart, templates::NodeKind::CaptionText, templates::NodeKind::Badge,
                 templates::NodeKind::Group}) {
    if (templates::node_kind_name(k) == name) return k;
  }
  throw Error(Code::StoreCorrupt, "unknown render node kind '" + name + "'");
}

Curation curation_from(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "stack") return StackCuration{};
  if (kind == "carousel") return CarouselCuration{};
  if (kind == "slideshow") return SlideshowCuration{j.at("interval-seconds").get<int>()};
  if (kind == "mini-dashboard") return MiniDashboardCuration{j.at("columns").get<int>()};
  throw Error(Code::StoreCorrupt, "unknown curation '" + kind + "'");
}

std::optional<std::string> optional_text(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(Code::StoreCorrupt, std::string("malformed render: ") + e.what());
  }
}

}  // namespace

RenderNode render_node_from_json(const json& j) {
  return guarded([&] {
    RenderNode n;
    n.kind = node_kind_from(j.at("kind").get<std::string>());
    n.role = j.at("role").get<std::string>();
    n.content = j.value("content", std::string());
    n.width = j.value("width", 0);
    n.height = j.value("height", 0);
    if (j.contains("children")) {
      for (const auto& c : j.at("children")) n.children.push_back(render_node_from_json(c));
    }
    return n;
  });
}

SnapshotRender render_from_json(const json& j) {
  return guarded([&] {
    SnapshotRender r;
    r.snapshot_id = j.at("snapshot-id").get<std::string>();
    r.title = j.at("title").get<std::string>();
    r.version = j.at("version").get<int>();
    r.curation = curation_from(j.at("curation"));
    r.freshness.fresh_until = Date::from_iso(j.at("freshness").at("fresh-until").get<std::string>());
    r.freshness.stale = j.at("freshness").at("stale").get<bool>();
    r.produced_at = Timestamp::from_iso(j.at("produced-at").get<std::string>());
    r.text_message = optional_text(j, "text-message");
    if (!j.at("completeness").is_null()) {
      const auto& c = j.at("completeness");
      CompletenessBadge b;
      b.complete = c.at("complete").get<bool>();
      b.detected = c.at("detected").get<bool>();
      b.missing = c.at("missing").get<std::vector<std::string>>();
      b.note = optional_text(c, "note");
      r.completeness = std::move(b);
    }
    for (const auto& c : j.at("components")) {
      ComponentRender cr;
      cr.component_id = c.at("id").get<std::string>();
      const auto& t = c.at("transparency");
      cr.transparency.filters = t.at("filters").get<std::vector<std::string>>();
      cr.transparency.viewer_filters = t.at("viewer-filters").get<std::vector<std::string>>();
      cr.transparency.time_frame = t.at("time-frame").get<std::string>();
      cr.warnings = c.at("warnings").get<std::vector<std::string>>();
      cr.error = optional_text(c, "error");
      cr.body = render_node_from_json(c.at("body"));
      r.components.push_back(std::move(cr));
    }
    return r;
  });
}

}  // namespace dashsnap::lifecycle
