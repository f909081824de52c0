#include "dashsnap/templates/applicability.hpp"

#include <set>

#include "dashsnap/data/query.hpp"
#include "dashsnap/templates/mediate.hpp"

namespace dashsnap::templates {

namespace {

template <class Dims>
void count_dims(const Dims& dims, ComponentShape& s) {
  for (const auto& d : dims) {
    (d.kind == DimensionKind::Nominal ? s.nominal : s.temporal) += 1;
  }
}

const Dimension* first_nominal(const std::vector<Dimension>& dims) {
  for (const auto& d : dims) {
    if (d.kind == DimensionKind::Nominal) return &d;
  }
  return nullptr;
}

std::optional<int> declared_categories(const std::vector<DataFilter>& filters, const std::string& column) {
  std::optional<int> best;
  for (const auto& f : filters) {
    if (f.column != column) continue;
    std::optional<int> n;
    if (std::holds_alternative<EqualsPredicate>(f.predicate)) n = 1;
    if (const auto* o = std::get_if<OneOfPredicate>(&f.predicate)) {
      std::set<std::string> distinct;
      for (const auto& v : o->values) distinct.insert(display(v));
      n = static_cast<int>(distinct.size());
    }
    if (n && (!best || *n < *best)) best = n;
  }
  return best;
}

std::string plural(int n, const char* noun) {
  return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

std::string bounds_text(int lo, int hi, const char* noun) {
  if (lo == hi) return "exactly " + plural(lo, noun);
  if (lo == 0) return "at most " + plural(hi, noun);
  return "between " + std::to_string(lo) + " and " + plural(hi, noun);
}

}  // namespace

ComponentShape shape_of(const ComponentSpec& c, const Table* data) {
  ComponentShape s;
  s.measures = static_cast<int>(c.measures.size());
  count_dims(c.dimensions, s);
  if (const auto* nominal = first_nominal(c.dimensions)) {
    if (data) {
      auto filtered = apply_filters(*data, c.data_filters);
      auto framed = apply_time_frame(filtered, c.time_frame);
      s.categories = static_cast<int>(distinct_values(framed, nominal->source_column).size());
    } else {
      s.categories = declared_categories(c.data_filters, nominal->source_column);
    }
  }
  return s;
}

ComponentShape shape_of(const DashboardSelection& sel, const Table* data) {
  ComponentShape s;
  s.measures = static_cast<int>(sel.measures.size());
  count_dims(sel.dimensions, s);
  if (const auto* nominal = first_nominal(sel.dimensions)) {
    if (data) {
      s.categories = static_cast<int>(
          distinct_values(apply_filters(*data, sel.data_filters), nominal->source_column).size());
    } else {
      s.categories = declared_categories(sel.data_filters, nominal->source_column);
    }
  }
  return s;
}

std::vector<std::string> unmet_requirements(const ShapeRequirements& req, const ComponentShape& shape) {
  std::vector<std::string> out;
  if (shape.measures != req.measures) {
    out.push_back("needs exactly " + plural(req.measures, "measure") + ", has " + std::to_string(shape.measures));
  }
  if (shape.nominal < req.nominal_min || shape.nominal > req.nominal_max) {
    out.push_back("needs " + bounds_text(req.nominal_min, req.nominal_max, "nominal dimension") + ", has " +
                  std::to_string(shape.nominal));
  }
  if (shape.temporal < req.temporal_min || shape.temporal > req.temporal_max) {
    out.push_back("needs " + bounds_text(req.temporal_min, req.temporal_max, "temporal dimension") + ", has " +
                  std::to_string(shape.temporal));
  }
  if (shape.nominal > 0 && shape.categories && *shape.categories > req.category_cap) {
    out.push_back("needs at most " + plural(req.category_cap, "category") + ", has " +
                  std::to_string(*shape.categories));
  }
  return out;
}

std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const ComponentShape& shape,
                                                     const std::map<std::string, ParamValue>& supplied) {
  std::vector<ApplicableTemplate> out;
  for (const auto& d : catalog.designs()) {
    if (!unmet_requirements(d.requirements, shape).empty()) continue;
    ApplicableTemplate a{d.id, {}};
    for (const auto& p : d.parameters) {
      if (p.required && !supplied.count(p.name)) a.missing_params.push_back(p.name);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const ComponentSpec& c,
                                                     const Table* data) {
  auto out = applicable_templates(catalog, shape_of(c, data));
  if (!c.template_binding) return out;
  for (auto& a : out) {
    if (a.design_id != c.template_binding->design_id) continue;
    std::erase_if(a.missing_params,
                  [&](const std::string& p) { return c.template_binding->parameters.count(p) > 0; });
  }
  return out;
}

std::vector<ApplicableTemplate> applicable_templates(const Catalog& catalog, const DashboardSelection& s,
                                                     const Table* data) {
  return applicable_templates(catalog, shape_of(s, data));
}

void TemplateChecker::check(const ComponentSpec& c, const std::string& path, ValidationReport& report) const {
  if (!c.template_binding) return;
  auto tpath = path.empty() ? std::string("template") : path + ".template";
  const auto* design = catalog_.find(c.template_binding->design_id);
  if (!design) {
    report.add(Code::UnknownTemplate, tpath + ".design",
               "unknown template design '" + c.template_binding->design_id + "'");
    return;
  }
  auto unmet = unmet_requirements(design->requirements, shape_of(c));
  for (const auto& u : unmet) {
    report.add(Code::TemplateInapplicable, tpath + ".design", design->id + " " + u);
  }
  check_parameters(*design, c.template_binding->parameters, nullptr, nullptr,
                   tpath + ".template-config.parameters", report);
}

}  // namespace dashsnap::templates
