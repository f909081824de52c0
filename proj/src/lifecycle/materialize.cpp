#include "dashsnap/lifecycle/materialize.hpp"

#include <omp.h>

#include "dashsnap/core/error.hpp"
#include "dashsnap/data/completeness.hpp"

namespace dashsnap::lifecycle {

namespace {

std::vector<std::string> warning_lines(const QueryWarnings& w) {
  std::vector<std::string> out;
  auto line = [&](std::size_t n, const char* what) {
    if (n) out.push_back(std::to_string(n) + " " + what);
  };
  line(w.null_filtered, "rows with empty filter values excluded");
  line(w.null_grouped, "rows with empty category values excluded");
  line(w.null_aggregated, "empty values skipped in aggregates");
  line(w.division_by_zero, "divisions by zero left without a value");
  return out;
}

struct Rendered {
  ComponentRender render;
  std::optional<CompletenessReport> completeness;
};

Rendered render_one(const SnapshotSpec& s, const ComponentSpec& c, const DataSourceRegistry& registry,
                    const MaterializeOptions& options, const templates::Catalog& catalog) {
  Rendered out;
  auto& r = out.render;
  r.component_id = c.id;
  r.transparency.time_frame = c.time_frame.describe();
  for (const auto& f : c.data_filters) r.transparency.filters.push_back(describe(f));
  std::vector<DataFilter> extra;
  if (auto it = options.viewer_filters.find(c.id); it != options.viewer_filters.end()) {
    extra = it->second;
    for (const auto& f : extra) r.transparency.viewer_filters.push_back(describe(f));
  }
  try {
    auto table = registry.resolve(c.data_source);
    auto result = evaluate_component(*table, c, extra, ExecutionPolicy::Serial);
    r.warnings = warning_lines(result.warnings);
    templates::RenderOptions ro;
    ro.width = options.width;
    r.body = templates::render_component(c, result, catalog, ro);
    if (s.completeness && s.completeness->detect) {
      try {
        out.completeness = detect_completeness(*table, c.time_frame, *s.completeness->detect);
      } catch (const Error& e) {
        r.warnings.push_back(std::string("completeness not detected: ") + e.what());
      }
    }
  } catch (const std::exception& e) {
    r.error = e.what();
    r.body = RenderNode::group("component", {RenderNode::badge("error", e.what())});
  }
  return out;
}

}  // namespace

SnapshotRender materialize(const SnapshotSpec& s, const DataSourceRegistry& registry, const Clock& clock,
                           const MaterializeOptions& options) {
  const auto& catalog = options.catalog ? *options.catalog : templates::Catalog::builtin();
  const Timestamp now = clock.now();
  SnapshotRender out;
  out.snapshot_id = s.id;
  out.title = s.title;
  out.version = s.version;
  out.curation = s.curation;
  out.text_message = s.text_message;
  out.produced_at = now;
  out.freshness = {s.freshness, is_stale(s.freshness, now)};

  const auto n = static_cast<std::ptrdiff_t>(s.components.size());
  std::vector<Rendered> rendered(s.components.size());
  // render_one never throws; each iteration writes only its own slot.
#pragma omp parallel for schedule(dynamic) if (options.policy == ExecutionPolicy::Parallel && n > 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    rendered[k] = render_one(s, s.components[k], registry, options, catalog);
  }

  for (auto& r : rendered) out.components.push_back(std::move(r.render));

  if (s.completeness) {
    CompletenessBadge badge;
    badge.note = s.completeness->note;
    if (s.completeness->complete) {
      badge.complete = *s.completeness->complete;
    } else {
      badge.detected = true;
      for (std::size_t i = 0; i < rendered.size(); ++i) {
        const auto& report = rendered[i].completeness;
        if (!report) continue;
        if (!report->complete) badge.complete = false;
        for (const auto& m : report->missing) badge.missing.push_back(s.components[i].id + ": " + m);
      }
    }
    out.completeness = std::move(badge);
  }
  return out;
}

}  // namespace dashsnap::lifecycle
