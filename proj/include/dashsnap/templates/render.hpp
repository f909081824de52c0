#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/query.hpp"
#include "dashsnap/templates/catalog.hpp"
#include "dashsnap/templates/mediate.hpp"

namespace dashsnap::templates {

enum class NodeKind { SvgChart, CaptionText, Badge, Group };

std::string_view node_kind_name(NodeKind k);

/// One piece of a rendered snapshot. `role` says what the piece is for
/// (e.g. "chart", "caption", "custom-text", "annotation", "no-data",
/// "error", "stale", "fresh", "completeness", "transparency").
struct RenderNode {
  NodeKind kind = NodeKind::Group;
  std::string role;
  std::string content;
  int width = 0;
  int height = 0;
  std::vector<RenderNode> children;

  static RenderNode group(std::string role, std::vector<RenderNode> children = {});
  static RenderNode badge(std::string role, std::string text);
  static RenderNode caption(std::string role, std::string text);
  static RenderNode chart(std::string svg, int width, int height);

  /// Depth-first search by role.
  const RenderNode* find(std::string_view role) const;
  std::vector<const RenderNode*> find_all(std::string_view role) const;

  friend bool operator==(const RenderNode&, const RenderNode&) = default;
};

inline constexpr int kBarRowHeight = 64;
inline constexpr int kChartWidth = 480;
inline constexpr int kSeriesHeight = 240;
inline constexpr int kCompactWidth = 360;

/// Caption from the design's text template. Throws Error(UnknownToken) if a
/// token cannot be resolved.
std::string render_caption(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result);

/// `{token}` substitution for custom text. Tokens: measure, dimension, unit,
/// total, time-frame, value(<category>), goal(<category>),
/// pct_of_goal(<category>). Throws Error(UnknownToken).
std::string render_text_expression(const std::string& expr, const TemplateConfig& cfg, const ResultTable& result);

/// SVG for a design's visual recipe.
std::string render_design_svg(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                              const std::vector<Annotation>& annotations = {});

/// Visual, text or both per `appearance`; an empty result yields a
/// "no data in time frame" badge instead.
RenderNode render_template(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                           Appearance appearance, const std::vector<Annotation>& annotations = {});

/// The component's own design with minimal responsive changes: below
/// kCompactWidth value-axis tick labels are dropped and fonts shrink one
/// step. Throws Error(UnsupportedMark) for marks the renderer lacks.
RenderNode render_original(const ComponentSpec& c, const ResultTable& result, int width = kChartWidth,
                           int height = 0);

struct RenderOptions {
  int width = kChartWidth;
  /// All categories of the data source, for unknown-key checks on
  /// per-category parameters. Null skips the check.
  const std::vector<std::string>* known_categories = nullptr;
};

/// Full component body: template or original design, then annotations,
/// caption and custom text.
RenderNode render_component(const ComponentSpec& c, const ResultTable& result, const Catalog& catalog,
                            const RenderOptions& options = {});

/// Categories (first nominal dimension) present in a result, in row order.
std::vector<std::string> result_categories(const ResultTable& result, const std::vector<Dimension>& dims);

}  // namespace dashsnap::templates
