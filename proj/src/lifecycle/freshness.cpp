#include "dashsnap/lifecycle/materialize.hpp"

namespace dashsnap::lifecycle {

bool is_stale(const Date& freshness, const Timestamp& now) { return now.date() > freshness; }

bool is_stale(const SnapshotSpec& s, const Clock& clock) { return is_stale(s.freshness, clock.now()); }

}  // namespace dashsnap::lifecycle
