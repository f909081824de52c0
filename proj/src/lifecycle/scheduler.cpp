#include "dashsnap/lifecycle/scheduler.hpp"

#include "dashsnap/lifecycle/update.hpp"

namespace dashsnap::lifecycle {

std::optional<Timestamp> next_due(const StoredVersion& latest) {
  const auto* rule = latest.spec.recurrence();
  if (!rule) return std::nullopt;
  Date date = add(latest.published_at.date(), rule->period);
  if (date > rule->until) return std::nullopt;
  return Timestamp(date, rule->publish_time);
}

std::vector<TickOutcome> scheduler_tick(SnapshotStore& store, const DataSourceRegistry& registry, const Clock& clock,
                                        const MaterializeOptions& options) {
  std::vector<TickOutcome> out;
  const Timestamp now = clock.now();
  for (const auto& id : store.ids()) {
    std::lock_guard guard(store.update_lock(id));
    auto latest = store.latest(id);
    auto due = next_due(latest);
    if (!due || *due > now) continue;
    TickOutcome outcome;
    outcome.snapshot_id = id;
    outcome.due = *due;
    try {
      // Stamped with the scheduled instant, so the schedule does not drift
      // when a tick runs late.
      FixedClock at_due(*due);
      auto next = update_auto(latest.spec, at_due);
      auto render = materialize(next, registry, clock, options);
      if (render.has_errors()) {
        std::string message;
        for (const auto& c : render.components) {
          if (c.error) message += (message.empty() ? "" : "; ") + c.component_id + ": " + *c.error;
        }
        outcome.error = message;
      } else {
        store.append(next, *due);
        outcome.version = next.version;
        outcome.spec = std::move(next);
        outcome.render = std::move(render);
      }
    } catch (const std::exception& e) {
      outcome.error = e.what();
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace dashsnap::lifecycle
