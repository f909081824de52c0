#include "dashsnap/data/completeness.hpp"

#include <algorithm>

#include "dashsnap/core/error.hpp"

namespace dashsnap {

CompletenessReport detect_completeness(const Table& t, const TimeFrame& tf, DurationUnit granularity) {
  auto col = t.require_column(tf.field);
  if (t.columns()[col].type != ColumnType::Date) {
    throw Error(Code::TemporalFieldRequired, "completeness field '" + tf.field + "' is not a date column");
  }
  const Date end = tf.end();
  if (add(tf.start, Duration{1, granularity}) > end) {
    throw Error(Code::GranularityTooCoarse, "one " + std::string(unit_name(granularity)) + " is longer than " +
                                                tf.duration.str());
  }

  // Bucket boundaries are computed from the frame start each time so that
  // month clamping never accumulates.
  std::vector<Date> starts;
  for (std::int64_t k = 0;; ++k) {
    Date s = add(tf.start, Duration{k, granularity});
    if (s >= end) break;
    starts.push_back(s);
  }

  std::vector<char> seen(starts.size(), 0);
  for (const auto& row : t.rows()) {
    const auto* d = std::get_if<Date>(&row[col]);
    if (!d || *d < tf.start || *d >= end) continue;
    auto it = std::upper_bound(starts.begin(), starts.end(), *d);
    seen[static_cast<std::size_t>(it - starts.begin()) - 1] = 1;
  }

  CompletenessReport r;
  r.expected_buckets = starts.size();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (seen[i]) {
      ++r.observed_buckets;
    } else {
      r.missing.push_back(starts[i].iso());
    }
  }
  r.complete = r.missing.empty();
  return r;
}

}  // namespace dashsnap
