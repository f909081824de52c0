#include "dashsnap/templates/mediate.hpp"

#include <algorithm>

#include "dashsnap/core/error.hpp"
#include "dashsnap/templates/applicability.hpp"

namespace dashsnap::templates {

std::optional<double> TemplateConfig::number(const std::string& name) const {
  auto it = parameters.find(name);
  if (it == parameters.end()) return std::nullopt;
  if (const auto* d = std::get_if<double>(&it->second)) return *d;
  return std::nullopt;
}

const std::map<std::string, double>* TemplateConfig::per_category(const std::string& name) const {
  auto it = parameters.find(name);
  if (it == parameters.end()) return nullptr;
  return std::get_if<std::map<std::string, double>>(&it->second);
}

TemplateConfig transfer(const ComponentSpec& c) {
  TemplateConfig cfg;
  cfg.measures = c.measures;
  cfg.dimensions = c.dimensions;
  cfg.time_frame = c.time_frame;
  cfg.data_filters = c.data_filters;
  cfg.scales = c.original_design.scales;
  return cfg;
}

namespace {

bool type_matches(ParamType t, const ParamValue& v) {
  switch (t) {
    case ParamType::Number: return std::holds_alternative<double>(v);
    case ParamType::NumberPerCategory: return std::holds_alternative<std::map<std::string, double>>(v);
    case ParamType::Text: return std::holds_alternative<std::string>(v);
  }
  return false;
}

}  // namespace

void check_parameters(const TemplateDesign& d, const std::map<std::string, ParamValue>& params,
                      const std::vector<std::string>* observed, const std::vector<std::string>* known,
                      const std::string& path, ValidationReport& report) {
  auto at = [&](const std::string& name) { return path.empty() ? name : path + "." + name; };
  for (const auto& [name, value] : params) {
    const auto* def = d.find_param(name);
    if (!def) {
      report.add(Code::UnknownKey, at(name), d.id + " has no parameter '" + name + "'");
      continue;
    }
    if (!type_matches(def->type, value)) {
      report.add(Code::ParamType, at(name),
                 "parameter '" + name + "' must be " + std::string(param_type_name(def->type)));
      continue;
    }
    const auto* per = std::get_if<std::map<std::string, double>>(&value);
    if (!per) continue;
    if (known) {
      for (const auto& [category, goal] : *per) {
        if (std::find(known->begin(), known->end(), category) == known->end()) {
          report.add(Code::ParamUnknownCategory, at(name) + "." + category,
                     "'" + category + "' is not a category of the data");
        }
      }
    }
    if (observed) {
      for (const auto& category : *observed) {
        if (!per->count(category)) {
          report.add(Code::ParamCategoryGap, at(name), "parameter '" + name + "' has no value for '" + category + "'");
        }
      }
    }
  }
  for (const auto& def : d.parameters) {
    if (def.required && !params.count(def.name)) {
      report.add(Code::ParamMissing, at(def.name), d.id + " needs parameter '" + def.name + "'");
    }
  }
}

TemplateConfig mediate_config(const ComponentSpec& c, const TemplateDesign& d,
                              const std::map<std::string, ParamValue>& params,
                              const std::vector<std::string>* observed, const std::vector<std::string>* known) {
  auto unmet = unmet_requirements(d.requirements, shape_of(c));
  if (!unmet.empty()) throw Error(Code::TemplateInapplicable, d.id + " " + unmet.front());
  ValidationReport report;
  check_parameters(d, params, observed, known, "", report);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw Error(v.code, v.message);
  }
  auto cfg = transfer(c);
  cfg.design_id = d.id;
  cfg.parameters = params;
  return cfg;
}

}  // namespace dashsnap::templates
