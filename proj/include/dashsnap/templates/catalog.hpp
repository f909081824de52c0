#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dashsnap::templates {

enum class ParamType { Number, NumberPerCategory, Text };

std::string_view param_type_name(ParamType t);

struct ParamDef {
  std::string name;
  ParamType type = ParamType::Number;
  bool required = false;

  friend bool operator==(const ParamDef&, const ParamDef&) = default;
};

/// Shape a component must have for a design to apply.
struct ShapeRequirements {
  int measures = 1;
  int nominal_min = 0;
  int nominal_max = 0;
  int temporal_min = 0;
  int temporal_max = 0;
  /// Upper bound on distinct values of the nominal dimension.
  int category_cap = 12;

  friend bool operator==(const ShapeRequirements&, const ShapeRequirements&) = default;
};

enum class VisualKind { Bars, Line };

struct VisualRecipe {
  VisualKind kind = VisualKind::Bars;
  std::optional<std::string> goal_param;   // bars: gray goal bar per category
  std::optional<std::string> upper_param;  // line: dashed rules
  std::optional<std::string> lower_param;

  friend bool operator==(const VisualRecipe&, const VisualRecipe&) = default;
};

struct TextTemplate {
  std::optional<std::string> per_category;
  std::optional<std::string> total;  // emitted only when total-goal is bound
  std::optional<std::string> per_series;

  friend bool operator==(const TextTemplate&, const TextTemplate&) = default;
};

struct TemplateDesign {
  std::string id;
  std::string intent;
  ShapeRequirements requirements;
  std::vector<ParamDef> parameters;
  VisualRecipe visual;
  TextTemplate text;

  const ParamDef* find_param(std::string_view name) const;

  friend bool operator==(const TemplateDesign&, const TemplateDesign&) = default;
};

/// Immutable after construction.
class Catalog {
 public:
  /// Parses a catalog document. Every token in a text template must be a
  /// transferred attribute, a line token, or a declared parameter; recipe
  /// parameter references must be declared. Throws spec_io::ParseError.
  static Catalog load(std::string_view yaml_text);
  /// The catalog compiled into the library (docs/templates.yaml).
  static const Catalog& builtin();

  const std::vector<TemplateDesign>& designs() const { return designs_; }
  const TemplateDesign* find(std::string_view id) const;
  /// Throws Error(UnknownTemplate).
  const TemplateDesign& require(std::string_view id) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<TemplateDesign> designs_;
};

/// `{name}` and `{name(arg)}` tokens of a template string, in order.
/// `{{` and `}}` are literal braces.
struct Token {
  std::string name;
  std::optional<std::string> argument;
};
std::vector<Token> scan_tokens(std::string_view text);

}  // namespace dashsnap::templates
