#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "dashsnap/core/model.hpp"
#include "dashsnap/core/validation.hpp"
#include "dashsnap/spec_io/yaml_reader.hpp"

namespace dashsnap::spec_io {

inline constexpr int kSpecVersion = 1;

/// A parsed document together with the source position of every spec path.
struct SpecDocument {
  std::string raw_text;
  std::variant<SnapshotSpec, ComponentSpec> parsed;
  std::map<std::string, SourceSpan> source_spans;

  bool is_snapshot() const { return parsed.index() == 0; }
  /// Span of `path`, or of its closest recorded ancestor.
  std::optional<SourceSpan> span_for(const std::string& path) const;
  void attach_spans(ValidationReport& report) const;
};

/// Structural parse only: surface-form errors throw ParseError, model
/// invariants are not checked. A document with a top-level `components` key
/// is a snapshot, anything else a component.
SpecDocument parse_document(std::string_view text);

/// Full parse: structure plus every schema-free model invariant. The first
/// violation is thrown as ParseError at its span.
SnapshotSpec parse_snapshot(std::string_view text);
ComponentSpec parse_component(std::string_view text);

/// Canonical text: fixed key order, two-space block indentation, ISO dates,
/// durations as "<count> <unit>", empty collections omitted.
std::string serialize_snapshot(const SnapshotSpec& s);
std::string serialize_component(const ComponentSpec& c);

/// Parse + validation with source spans. Syntax or structure failures yield
/// exactly one entry; otherwise every violation found, each with a span.
/// Without a registry only schema-free checks run.
ValidationReport lint(std::string_view text, const SchemaResolver* registry = nullptr,
                      const ComponentChecker* checker = nullptr);

}  // namespace dashsnap::spec_io
