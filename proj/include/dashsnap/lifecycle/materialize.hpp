#pragma once

#include <map>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/query.hpp"
#include "dashsnap/data/registry.hpp"
#include "dashsnap/lifecycle/snapshot_render.hpp"
#include "dashsnap/templates/catalog.hpp"

namespace dashsnap::lifecycle {

/// stale <=> the clock's date is after the best-before date.
bool is_stale(const SnapshotSpec& s, const Clock& clock);
bool is_stale(const Date& freshness, const Timestamp& now);

struct MaterializeOptions {
  int width = templates::kChartWidth;
  /// Per component id: filters a viewer applied on top of the component's.
  std::map<std::string, std::vector<DataFilter>> viewer_filters;
  /// Components render concurrently under Parallel.
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
  const templates::Catalog* catalog = nullptr;  // builtin when null
};

/// Renders every component (load, filter, frame, evaluate, template or
/// original design) plus the freshness, completeness and message parts.
/// A component that fails becomes an error badge; the others still render.
SnapshotRender materialize(const SnapshotSpec& s, const DataSourceRegistry& registry, const Clock& clock,
                           const MaterializeOptions& options = {});

}  // namespace dashsnap::lifecycle
