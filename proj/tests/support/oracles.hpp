#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/table.hpp"
#include "support/generators.hpp"

// Brute-force reference implementations. They deliberately share no code
// with the library beyond the plain data types.
namespace dashsnap::testing::oracle {

/// Civil-date arithmetic on plain integers.
struct Ymd {
  int y;
  int m;
  int d;
  friend bool operator==(const Ymd&, const Ymd&) = default;
};

std::int64_t days_from_civil(Ymd ymd);
Ymd civil_from_days(std::int64_t z);
Ymd to_ymd(const Date& d);
Date from_ymd(Ymd ymd);

/// Calendar step with day-of-month clamping.
Date step(const Date& date, const Duration& d);

/// "find the time frame with the latest end date and add the time frame's
/// duration to the end date"; ties: longer frame, then smaller id.
Date freshness(const std::vector<ComponentSpec>& components);

/// Start after k successive shifts by `period`.
Date shifted_start(const Date& start, const Duration& period, int k);

struct Group {
  std::vector<Cell> keys;
  std::vector<std::optional<double>> values;
};

/// Group-by over the query's dimensions with a linear scan; rows with a null
/// key are dropped. Groups are returned in first-seen order.
std::vector<Group> aggregate(const RandomQuery& q);

}  // namespace dashsnap::testing::oracle
