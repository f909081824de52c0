#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dashsnap/core/model.hpp"
#include "dashsnap/templates/render.hpp"

namespace dashsnap::lifecycle {

using templates::RenderNode;

struct FreshnessBadge {
  Date fresh_until;
  bool stale = false;

  friend bool operator==(const FreshnessBadge&, const FreshnessBadge&) = default;
};

struct CompletenessBadge {
  bool complete = true;
  bool detected = false;
  std::optional<std::string> note;
  /// "<component>: <bucket start>" for each empty bucket found.
  std::vector<std::string> missing;

  friend bool operator==(const CompletenessBadge&, const CompletenessBadge&) = default;
};

/// What a reader needs to know about where a component's numbers come from.
struct Transparency {
  std::vector<std::string> filters;
  /// Filters a viewer applied privately; empty for the shared view.
  std::vector<std::string> viewer_filters;
  std::string time_frame;

  friend bool operator==(const Transparency&, const Transparency&) = default;
};

struct ComponentRender {
  std::string component_id;
  Transparency transparency;
  /// The rendered body, or an "error" badge when the component failed.
  RenderNode body;
  std::optional<std::string> error;
  std::vector<std::string> warnings;

  friend bool operator==(const ComponentRender&, const ComponentRender&) = default;
};

struct SnapshotRender {
  std::string snapshot_id;
  std::string title;
  int version = 1;
  Curation curation;
  std::vector<ComponentRender> components;
  FreshnessBadge freshness;
  std::optional<CompletenessBadge> completeness;
  std::optional<std::string> text_message;
  Timestamp produced_at;

  /// Curation node over one group per component. Each component group holds
  /// a "transparency" group first, then the body.
  RenderNode layout() const;
  bool has_errors() const;

  friend bool operator==(const SnapshotRender&, const SnapshotRender&) = default;
};

nlohmann::json to_json(const RenderNode& node);
nlohmann::json to_json(const SnapshotRender& render);

/// Byte-stable text of a render: the JSON document dumped with sorted keys.
std::string render_bytes(const SnapshotRender& render);

}  // namespace dashsnap::lifecycle

namespace dashsnap::lifecycle {

/// Inverses of to_json; the derived layout is ignored. Throw
/// Error(StoreCorrupt) on a malformed document.
RenderNode render_node_from_json(const nlohmann::json& j);
SnapshotRender render_from_json(const nlohmann::json& j);

}  // namespace dashsnap::lifecycle
