#include "dashsnap/spec_io/spec_io.hpp"

namespace dashsnap::spec_io {

ValidationReport lint(std::string_view text, const SchemaResolver* registry, const ComponentChecker* checker) {
  ValidationReport report;
  SpecDocument doc;
  try {
    doc = parse_document(text);
  } catch (const ParseError& e) {
    report.violations.push_back({e.code(), "", e.what(), e.span()});
    return report;
  } catch (const Error& e) {
    report.violations.push_back({e.code(), "", e.what(), SourceSpan{1, 1}});
    return report;
  }

  if (doc.is_snapshot()) {
    const auto& s = std::get<SnapshotSpec>(doc.parsed);
    report = registry ? validate_snapshot(s, *registry, checker) : check_snapshot_shape(s);
    if (!registry && checker) {
      for (std::size_t i = 0; i < s.components.size(); ++i) {
        checker->check(s.components[i], "components[" + std::to_string(i) + "]", report);
      }
    }
  } else {
    const auto& c = std::get<ComponentSpec>(doc.parsed);
    std::optional<DataSourceSchema> schema;
    if (registry) schema = registry->schema_of(c.data_source);
    if (registry && !schema) {
      report = check_component_shape(c);
      report.add(Code::UnknownDataSource, "data-source", "unknown data source '" + c.data_source + "'");
    } else {
      report = schema ? validate_component(c, *schema) : check_component_shape(c);
    }
    if (checker) checker->check(c, "", report);
  }
  doc.attach_spans(report);
  return report;
}

}  // namespace dashsnap::spec_io
