#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/core/validation.hpp"
#include "dashsnap/templates/catalog.hpp"

namespace dashsnap::templates {

/// Binds a component's attributes and the analyst's parameter values to a
/// design. Everything but `parameters` is transferred from the component.
struct TemplateConfig {
  std::string design_id;
  std::vector<Measure> measures;
  std::vector<Dimension> dimensions;
  TimeFrame time_frame;
  std::vector<DataFilter> data_filters;
  std::vector<Scale> scales;
  std::map<std::string, ParamValue> parameters;

  std::optional<double> number(const std::string& name) const;
  const std::map<std::string, double>* per_category(const std::string& name) const;

  friend bool operator==(const TemplateConfig&, const TemplateConfig&) = default;
};

/// Transferred attributes only, no design; used for custom text on
/// components shown in their original design.
TemplateConfig transfer(const ComponentSpec& c);

/// Parameter checks against a design's definitions. `observed` are the
/// categories in the evaluated result (coverage); `known` are all categories
/// the data source has (unknown keys). Either may be null to skip that check.
void check_parameters(const TemplateDesign& d, const std::map<std::string, ParamValue>& params,
                      const std::vector<std::string>* observed, const std::vector<std::string>* known,
                      const std::string& path, ValidationReport& report);

/// Throws Error(TemplateInapplicable | ParamMissing | ParamType |
/// ParamCategoryGap | ParamUnknownCategory) for the first problem found.
TemplateConfig mediate_config(const ComponentSpec& c, const TemplateDesign& d,
                              const std::map<std::string, ParamValue>& params,
                              const std::vector<std::string>* observed = nullptr,
                              const std::vector<std::string>* known = nullptr);

}  // namespace dashsnap::templates
