#include "dashsnap/core/freshness.hpp"

#include "dashsnap/core/error.hpp"

namespace dashsnap {

Date infer_freshness(std::span<const ComponentSpec> components) {
  if (components.empty()) throw Error(Code::NoComponents, "cannot infer freshness without components");
  const ComponentSpec* best = &components.front();
  for (const auto& c : components.subspan(1)) {
    const auto& a = c.time_frame;
    const auto& b = best->time_frame;
    if (a.end() != b.end()) {
      if (a.end() > b.end()) best = &c;
      continue;
    }
    auto len_a = days_between(a.start, a.end());
    auto len_b = days_between(b.start, b.end());
    if (len_a != len_b) {
      if (len_a > len_b) best = &c;
      continue;
    }
    if (c.id < best->id) best = &c;
  }
  return add(best->time_frame.end(), best->time_frame.duration);
}

}  // namespace dashsnap
