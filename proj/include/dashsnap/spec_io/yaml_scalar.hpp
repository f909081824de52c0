#pragma once

#include <string>
#include <string_view>

#include "dashsnap/core/value.hpp"

namespace dashsnap::spec_io {

/// How a plain (unquoted) scalar is typed when read as a literal.
Scalar classify_plain(std::string_view text);

/// Emits `text` as a YAML scalar: plain when it would read back as the same
/// string, double-quoted otherwise.
std::string quote_string(std::string_view text);

/// Always double-quoted, JSON-style escapes.
std::string double_quoted(std::string_view text);

/// Emits a typed literal so that read_scalar returns an equal value.
std::string emit_scalar(const Scalar& s);

}  // namespace dashsnap::spec_io
