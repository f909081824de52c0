#include "dashsnap/lifecycle/update.hpp"

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/freshness.hpp"

namespace dashsnap::lifecycle {

ComponentSpec retarget(const ComponentSpec& c, const TimeFrame& next) {
  ComponentSpec out = c;
  const TimeFrame& old = c.time_frame;
  for (auto& f : out.data_filters) {
    auto* r = std::get_if<DateRangePredicate>(&f.predicate);
    if (r && f.column == old.field && r->start == old.start && r->end == old.end()) {
      r->start = next.start;
      r->end = next.end();
      f.column = next.field;
    }
  }
  out.time_frame = next;
  return out;
}

SnapshotSpec update_auto(const SnapshotSpec& s, const Clock& clock) {
  const auto* rule = s.recurrence();
  if (!rule) throw Error(Code::NotAutoRecur, "snapshot '" + s.id + "' is not set to auto-recur");
  auto now = clock.now();
  if (now.date() > rule->until) {
    throw Error(Code::RecurrenceExpired,
                "snapshot '" + s.id + "' stopped recurring on " + rule->until.iso() + "; clock is " + now.iso());
  }
  SnapshotSpec out = s;
  for (auto& c : out.components) {
    TimeFrame next = c.time_frame;
    next.start = add(c.time_frame.start, rule->period);
    c = retarget(c, next);
    c.annotations.clear();
    c.caption.reset();
    c.custom_text.reset();
  }
  out.text_message.reset();
  out.freshness = infer_freshness(out.components);
  out.version = s.version + 1;
  out.created_at = now;
  return out;
}

SnapshotSpec update_manual(const SnapshotSpec& s, const ManualEdits& edits, const Clock& clock) {
  auto require = [&](const std::string& id) {
    if (!s.find_component(id)) throw Error(Code::NotFound, "snapshot '" + s.id + "' has no component '" + id + "'");
  };
  for (const auto& [id, _] : edits.time_frames) require(id);
  for (const auto& [id, _] : edits.annotations) require(id);
  for (const auto& [id, _] : edits.captions) require(id);
  for (const auto& [id, _] : edits.custom_texts) require(id);

  SnapshotSpec out = s;
  for (auto& c : out.components) {
    if (auto it = edits.time_frames.find(c.id); it != edits.time_frames.end()) c = retarget(c, it->second);
    c.annotations.clear();
    if (auto it = edits.annotations.find(c.id); it != edits.annotations.end()) c.annotations = it->second;
    if (auto it = edits.captions.find(c.id); it != edits.captions.end()) c.caption = it->second;
    if (auto it = edits.custom_texts.find(c.id); it != edits.custom_texts.end()) c.custom_text = it->second;
  }
  if (edits.text_message) out.text_message = *edits.text_message;
  out.freshness = edits.freshness ? *edits.freshness : infer_freshness(out.components);
  if (edits.author) out.author = *edits.author;
  out.version = s.version + 1;
  out.created_at = clock.now();
  return out;
}

}  // namespace dashsnap::lifecycle
