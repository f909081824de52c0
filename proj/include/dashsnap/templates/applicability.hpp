#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/core/validation.hpp"
#include "dashsnap/data/table.hpp"
#include "dashsnap/templates/catalog.hpp"

namespace dashsnap::templates {

/// What applicability looks at: counts of measures and dimension kinds, and
/// how many categories the nominal dimension has (unknown without data or a
/// declaring filter, in which case it is assumed to fit).
struct ComponentShape {
  int measures = 0;
  int nominal = 0;
  int temporal = 0;
  std::optional<int> categories;

  friend bool operator==(const ComponentShape&, const ComponentShape&) = default;
};

/// Category count comes from `data` when given (distinct values after the
/// component's filters and time frame), else from an equals/one-of filter on
/// the nominal dimension's column.
ComponentShape shape_of(const ComponentSpec& c, const Table* data = nullptr);
/// Selections have no time frame yet; only their filters apply.
ComponentShape shape_of(const DashboardSelection& s, const Table* data = nullptr);

/// Human-readable unmet requirements; empty when the shape fits.
std::vector<std::string> unmet_requirements(const ShapeRequirements& req, const ComponentShape& shape);

struct ApplicableTemplate {
  std::string design_id;
  /// Required parameters not yet supplied; the analyst can still pick the
  /// design and fill them in.
  std::vector<std::string> missing_params;

  friend bool operator==(const ApplicableTemplate&, const ApplicableTemplate&) = default;
};

/// Designs whose shape requirements hold, in catalog order.
std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const ComponentShape& shape,
                                                     const std::map<std::string, ParamValue>& supplied = {});
/// Parameters already bound on the component count as supplied for its own
/// design.
std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const ComponentSpec& c,
                                                     const Table* data = nullptr);
std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const DashboardSelection& s,
                                                     const Table* data = nullptr);

/// Catalog-aware component checks: known design, applicable shape, well-typed
/// parameters. Category coverage is left to mediation, which sees the data.
class TemplateChecker : public ComponentChecker {
 public:
  explicit TemplateChecker(const Catalog& catalog = Catalog::builtin()) : catalog_(catalog) {}
  void check(const ComponentSpec& component, const std::string& path, ValidationReport& report) const override;

 private:
  const Catalog& catalog_;
};

}  // namespace dashsnap::templates
