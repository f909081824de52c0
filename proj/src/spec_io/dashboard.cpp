#include "dashsnap/spec_io/dashboard.hpp"

#include <algorithm>

#include "dashsnap/core/validation.hpp"
#include "dashsnap/spec_io/yaml_reader.hpp"

namespace dashsnap::spec_io {

const DashboardSelection* DashboardDescriptor::find_panel(std::string_view panel_id) const {
  auto it = std::find_if(panels.begin(), panels.end(),
                         [&](const DashboardSelection& p) { return p.panel_id == panel_id; });
  return it == panels.end() ? nullptr : &*it;
}

DashboardDescriptor parse_dashboard(std::string_view text) {
  auto root = load_document(text);
  ReadContext ctx;
  MapReader m(root, "", ctx, {"id", "title", "data-sources", "panels"});
  DashboardDescriptor d;
  d.id = read_identifier(m.require("id"));
  if (auto n = m.get("title")) d.title = read_text(*n);
  d.data_sources = read_list<DataSourceRef>(
      m.require("data-sources"), "data-sources", ctx,
      [](const YAML::Node& node, const std::string& path, ReadContext& c) {
        MapReader s(node, path, c, {"id", "path", "schema"});
        DataSourceRef ref;
        ref.id = read_identifier(s.require("id"));
        ref.path = read_text(s.require("path"));
        if (auto sn = s.get("schema")) ref.schema = read_text(*sn);
        return ref;
      });
  d.panels = read_list<DashboardSelection>(
      m.require("panels"), "panels", ctx, [](const YAML::Node& node, const std::string& path, ReadContext& c) {
        MapReader p(node, path, c,
                    {"panel", "worksheet", "data-source", "measures", "dimensions", "data-filters",
                     "original-design"});
        DashboardSelection sel;
        sel.panel_id = read_identifier(p.require("panel"));
        sel.worksheet = p.has("worksheet") ? read_text(*p.get("worksheet")) : sel.panel_id;
        sel.data_source = read_identifier(p.require("data-source"));
        if (auto n = p.get("measures")) sel.measures = read_list<Measure>(*n, p.path("measures"), c, read_measure);
        if (auto n = p.get("dimensions")) {
          sel.dimensions = read_list<Dimension>(*n, p.path("dimensions"), c, read_dimension);
        }
        if (auto n = p.get("data-filters")) {
          sel.data_filters = read_list<DataFilter>(*n, p.path("data-filters"), c, read_filter);
        }
        sel.original_design = read_design(p.require("original-design"), p.path("original-design"), c);
        return sel;
      });

  ValidationReport report = check_unique_panels(d.panels);
  for (std::size_t i = 0; i < d.panels.size(); ++i) {
    report.merge(check_selection_shape(d.panels[i], "panels[" + std::to_string(i) + "]"));
  }
  if (!report.ok()) {
    const auto& v = report.violations.front();
    auto& spans = ctx.spans();
    std::string p = v.path;
    SourceSpan span{1, 1};
    while (true) {
      if (auto it = spans.find(p); it != spans.end()) {
        span = it->second;
        break;
      }
      auto cut = p.find_last_of(".[");
      if (cut == std::string::npos) break;
      p = p.substr(0, cut);
    }
    throw ParseError(v.code, v.message, span);
  }
  return d;
}

}  // namespace dashsnap::spec_io
