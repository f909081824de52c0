#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dashsnap/data/registry.hpp"
#include "dashsnap/lifecycle/materialize.hpp"
#include "dashsnap/lifecycle/store.hpp"

namespace dashsnap::lifecycle {

struct TickOutcome {
  std::string snapshot_id;
  int version = 0;  // the new version, 0 on failure
  Timestamp due;
  std::optional<SnapshotSpec> spec;
  std::optional<SnapshotRender> render;
  std::optional<std::string> error;
};

/// Next publish instant of an auto-recur snapshot: the date of the last
/// publish plus one period, at the rule's publish time. Nullopt for other
/// policies or when that date is past the horizon.
std::optional<Timestamp> next_due(const StoredVersion& latest);

/// Publishes every auto-recur snapshot whose next due instant has come:
/// update, materialize, append to the store. At most one update per
/// snapshot per tick; a tick at the same instant twice publishes once.
/// Failures (including components that fail to render) are reported and the
/// version is not stored, so the next tick retries.
std::vector<TickOutcome> scheduler_tick(SnapshotStore& store, const DataSourceRegistry& registry, const Clock& clock,
                                        const MaterializeOptions& options = {});

}  // namespace dashsnap::lifecycle
