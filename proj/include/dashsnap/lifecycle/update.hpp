#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"

namespace dashsnap::lifecycle {

/// Moves the frame to `next` and carries date-range filters that spanned
/// exactly the old frame along with it. Other filters stay as they are.
ComponentSpec retarget(const ComponentSpec& c, const TimeFrame& next);

/// Every frame one recurrence period later; annotations, captions and custom
/// text dropped; freshness re-inferred; version + 1; created now.
/// Throws Error(NotAutoRecur) or Error(RecurrenceExpired) when the clock's
/// date is past the horizon.
SnapshotSpec update_auto(const SnapshotSpec& s, const Clock& clock);

/// What an author changes in a manual update. Annotations of the previous
/// version never carry over; everything listed here is applied as given.
struct ManualEdits {
  std::map<std::string, TimeFrame> time_frames;
  std::map<std::string, std::vector<Annotation>> annotations;
  std::map<std::string, std::optional<std::string>> captions;
  std::map<std::string, std::optional<std::string>> custom_texts;
  std::optional<std::optional<std::string>> text_message;
  std::optional<Date> freshness;
  std::optional<std::string> author;
};

/// Throws Error(NotFound) for an edit naming an unknown component.
SnapshotSpec update_manual(const SnapshotSpec& s, const ManualEdits& edits, const Clock& clock);

}  // namespace dashsnap::lifecycle
