#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/model.hpp"

namespace dashsnap {

/// One invariant violation. `path` addresses the offending node using the
/// YAML surface keys, e.g. "components[0].time-frame.field".
struct Violation {
  Code code;
  std::string path;
  std::string message;
  std::optional<SourceSpan> span;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(Code code) const;
  void add(Code code, std::string path, std::string message);
  void merge(const ValidationReport& other);
  std::string str() const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// Thrown by operations whose precondition is a valid spec.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

struct ColumnSchema {
  std::string name;
  ColumnType type = ColumnType::String;

  friend bool operator==(const ColumnSchema&, const ColumnSchema&) = default;
};

struct DataSourceSchema {
  std::vector<ColumnSchema> columns;

  std::optional<ColumnType> type_of(std::string_view column) const;
  friend bool operator==(const DataSourceSchema&, const DataSourceSchema&) = default;
};

/// Resolves a data-source identifier to its column schema.
class SchemaResolver {
 public:
  virtual ~SchemaResolver() = default;
  virtual std::optional<DataSourceSchema> schema_of(std::string_view data_source) const = 0;
};

/// Extra per-component checks contributed by the template catalog (known
/// design id, parameter types). Lives behind an interface so the core model
/// does not depend on the template engine.
class ComponentChecker {
 public:
  virtual ~ComponentChecker() = default;
  virtual void check(const ComponentSpec& component, const std::string& path,
                     ValidationReport& report) const = 0;
};

/// Invariants that need no data-source schema: measure shapes, expression
/// references and cycles, encodings, appearance, filters' own shape.
ValidationReport check_component_shape(const ComponentSpec& c, const std::string& path = "");
ValidationReport check_selection_shape(const DashboardSelection& s, const std::string& path = "");
ValidationReport check_snapshot_shape(const SnapshotSpec& s);

ValidationReport validate_component(const ComponentSpec& c, const DataSourceSchema& schema,
                                    const std::string& path = "");
ValidationReport validate_selection(const DashboardSelection& s, const DataSourceSchema& schema,
                                    const std::string& path = "");
ValidationReport validate_snapshot(const SnapshotSpec& s, const SchemaResolver& registry,
                                   const ComponentChecker* checker = nullptr);

/// Panel ids must be unique within one dashboard descriptor.
ValidationReport check_unique_panels(const std::vector<DashboardSelection>& panels);

}  // namespace dashsnap
