#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/table.hpp"

namespace dashsnap {

/// Missing-data detection by temporal bucket emptiness: the frame is tiled
/// into consecutive `granularity` buckets starting at the frame start (the
/// last bucket is clipped to the frame end); a bucket with no rows is
/// missing. Labels are bucket start dates.
struct CompletenessReport {
  std::size_t expected_buckets = 0;
  std::size_t observed_buckets = 0;
  std::vector<std::string> missing;
  bool complete = true;

  friend bool operator==(const CompletenessReport&, const CompletenessReport&) = default;
};

/// Throws Error(GranularityTooCoarse) when one bucket outlasts the frame,
/// Error(UnknownColumn | TemporalFieldRequired) for a bad frame field.
CompletenessReport detect_completeness(const Table& t, const TimeFrame& tf, DurationUnit granularity);

}  // namespace dashsnap
