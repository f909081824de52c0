#include "dashsnap/templates/catalog.hpp"

#include <set>

#include "builtin_catalog.hpp"
#include "dashsnap/core/error.hpp"
#include "dashsnap/spec_io/yaml_reader.hpp"

namespace dashsnap::templates {

using spec_io::child_path;
using spec_io::fail;
using spec_io::item_path;
using spec_io::MapReader;
using spec_io::ReadContext;

std::string_view param_type_name(ParamType t) {
  switch (t) {
    case ParamType::Number: return "number";
    case ParamType::NumberPerCategory: return "number-per-category";
    case ParamType::Text: return "text";
  }
  return "number";
}

const ParamDef* TemplateDesign::find_param(std::string_view name) const {
  for (const auto& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::vector<Token> scan_tokens(std::string_view text) {
  std::vector<Token> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '{' || c == '}') && i + 1 < text.size() && text[i + 1] == c) {
      ++i;
      continue;
    }
    if (c != '{') continue;
    auto close = text.find('}', i);
    if (close == std::string_view::npos) {
      throw Error(Code::UnknownToken, "unterminated token in '" + std::string(text) + "'");
    }
    std::string body(text.substr(i + 1, close - i - 1));
    Token t;
    auto paren = body.find('(');
    if (paren != std::string::npos && body.back() == ')') {
      t.name = body.substr(0, paren);
      t.argument = body.substr(paren + 1, body.size() - paren - 2);
    } else {
      t.name = body;
    }
    out.push_back(std::move(t));
    i = close;
  }
  return out;
}

namespace {

const std::set<std::string, std::less<>> kGlobalTokens{"measure", "dimension", "unit", "time-frame"};
const std::set<std::string, std::less<>> kCategoryTokens{"category", "value", "goal", "pct_of_goal", "met"};
const std::set<std::string, std::less<>> kTotalTokens{"total", "total_goal", "total_pct_of_goal"};
const std::set<std::string, std::less<>> kSeriesTokens{"series", "start", "end", "first", "last", "change"};

void read_bounds(const YAML::Node& node, const std::string& path, ReadContext& ctx, int& lo, int& hi) {
  MapReader m(node, path, ctx, {"min", "max"});
  lo = spec_io::read_int(m.require("min"));
  hi = spec_io::read_int(m.require("max"));
  if (lo < 0 || hi < lo) fail(Code::InvalidValue, node, "bounds need 0 <= min <= max");
}

void check_tokens(const YAML::Node& node, const std::string& text, const TemplateDesign& d,
                  const std::set<std::string, std::less<>>& line_tokens) {
  for (const auto& t : scan_tokens(text)) {
    if (kGlobalTokens.count(t.name) || line_tokens.count(t.name) || d.find_param(t.name)) continue;
    fail(Code::UnknownToken, node, "token '{" + t.name + "}' is neither an attribute nor a parameter of " + d.id);
  }
}

TemplateDesign read_template_design(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"id", "intent", "requirements", "parameters", "visual", "text"});
  TemplateDesign d;
  d.id = spec_io::read_identifier(m.require("id"));
  d.intent = spec_io::read_text(m.require("intent"));

  MapReader r(m.require("requirements"), m.path("requirements"), ctx,
              {"measures", "nominal-dimensions", "temporal-dimensions", "category-cap"});
  d.requirements.measures = spec_io::read_int(r.require("measures"));
  read_bounds(r.require("nominal-dimensions"), r.path("nominal-dimensions"), ctx, d.requirements.nominal_min,
              d.requirements.nominal_max);
  read_bounds(r.require("temporal-dimensions"), r.path("temporal-dimensions"), ctx, d.requirements.temporal_min,
              d.requirements.temporal_max);
  if (auto cap = r.get("category-cap")) {
    d.requirements.category_cap = spec_io::read_int(*cap);
    if (d.requirements.category_cap < 1) fail(Code::InvalidValue, *cap, "category-cap must be >= 1");
  }

  if (auto params = m.get("parameters")) {
    auto items = spec_io::read_sequence(*params, m.path("parameters"), ctx);
    for (std::size_t i = 0; i < items.size(); ++i) {
      MapReader p(items[i], item_path(m.path("parameters"), i), ctx, {"name", "type", "required"});
      ParamDef def;
      def.name = spec_io::read_identifier(p.require("name"));
      auto type = spec_io::read_text(p.require("type"));
      if (type == "number") {
        def.type = ParamType::Number;
      } else if (type == "number-per-category") {
        def.type = ParamType::NumberPerCategory;
      } else if (type == "text") {
        def.type = ParamType::Text;
      } else {
        fail(Code::InvalidValue, p.require("type"), "parameter type must be number, number-per-category or text");
      }
      if (auto req = p.get("required")) def.required = spec_io::read_bool(*req);
      if (d.find_param(def.name)) fail(Code::InvalidValue, items[i], "duplicate parameter '" + def.name + "'");
      d.parameters.push_back(def);
    }
  }

  MapReader v(m.require("visual"), m.path("visual"), ctx, {"kind", "goal", "upper", "lower"});
  auto kind = spec_io::read_text(v.require("kind"));
  if (kind == "bars") {
    d.visual.kind = VisualKind::Bars;
  } else if (kind == "line") {
    d.visual.kind = VisualKind::Line;
  } else {
    fail(Code::InvalidValue, v.require("kind"), "visual kind must be bars or line");
  }
  auto param_ref = [&](std::string_view key, ParamType type) -> std::optional<std::string> {
    auto n = v.get(key);
    if (!n) return std::nullopt;
    auto name = spec_io::read_identifier(*n);
    const auto* p = d.find_param(name);
    if (!p || p->type != type) {
      fail(Code::InvalidValue, *n, "visual." + std::string(key) + " must name a " +
                                       std::string(param_type_name(type)) + " parameter");
    }
    return name;
  };
  d.visual.goal_param = param_ref("goal", ParamType::NumberPerCategory);
  d.visual.upper_param = param_ref("upper", ParamType::Number);
  d.visual.lower_param = param_ref("lower", ParamType::Number);

  MapReader t(m.require("text"), m.path("text"), ctx, {"per-category", "total", "per-series"});
  if (auto n = t.get("per-category")) {
    d.text.per_category = spec_io::read_text(*n);
    check_tokens(*n, *d.text.per_category, d, kCategoryTokens);
  }
  if (auto n = t.get("total")) {
    d.text.total = spec_io::read_text(*n);
    check_tokens(*n, *d.text.total, d, kTotalTokens);
  }
  if (auto n = t.get("per-series")) {
    d.text.per_series = spec_io::read_text(*n);
    check_tokens(*n, *d.text.per_series, d, kSeriesTokens);
  }
  if (d.visual.kind == VisualKind::Bars && !d.text.per_category) {
    fail(Code::MissingField, m.require("text"), "bar designs need a per-category text template");
  }
  if (d.visual.kind == VisualKind::Line && !d.text.per_series) {
    fail(Code::MissingField, m.require("text"), "line designs need a per-series text template");
  }
  return d;
}

}  // namespace

Catalog Catalog::load(std::string_view yaml_text) {
  auto root = spec_io::load_document(yaml_text);
  ReadContext ctx;
  MapReader m(root, "", ctx, {"catalog-version", "designs"});
  if (auto v = m.get("catalog-version"); v && spec_io::read_int(*v) != 1) {
    fail(Code::UnsupportedVersion, *v, "unsupported catalog-version");
  }
  Catalog c;
  auto items = spec_io::read_sequence(m.require("designs"), "designs", ctx);
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto d = read_template_design(items[i], item_path("designs", i), ctx);
    if (c.find(d.id)) fail(Code::InvalidValue, items[i], "duplicate design '" + d.id + "'");
    c.designs_.push_back(std::move(d));
  }
  return c;
}

const Catalog& Catalog::builtin() {
  static const Catalog catalog = load(detail::kBuiltinCatalog);
  return catalog;
}

const TemplateDesign* Catalog::find(std::string_view id) const {
  for (const auto& d : designs_) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

const TemplateDesign& Catalog::require(std::string_view id) const {
  if (const auto* d = find(id)) return *d;
  throw Error(Code::UnknownTemplate, "unknown template design '" + std::string(id) + "'");
}

}  // namespace dashsnap::templates
