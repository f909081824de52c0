#pragma once

#include <span>

#include "dashsnap/core/model.hpp"

namespace dashsnap {

/// Best-before date for a set of components: take the time frame with the
/// latest end, add that frame's duration to its end. Ties on end go to the
/// longer frame (in days), then to the lexicographically smallest component
/// id. Precondition: `components` is non-empty.
Date infer_freshness(std::span<const ComponentSpec> components);

}  // namespace dashsnap
