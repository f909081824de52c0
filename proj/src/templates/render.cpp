#include "dashsnap/templates/render.hpp"

#include <algorithm>
#include <cmath>

#include "dashsnap/core/error.hpp"
#include "dashsnap/templates/number_format.hpp"
#include "dashsnap/templates/svg.hpp"
#include "internal.hpp"

namespace dashsnap::templates {

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::SvgChart: return "svg-chart";
    case NodeKind::CaptionText: return "caption-text";
    case NodeKind::Badge: return "badge";
    case NodeKind::Group: return "group";
  }
  return "group";
}

RenderNode RenderNode::group(std::string role, std::vector<RenderNode> children) {
  RenderNode n;
  n.kind = NodeKind::Group;
  n.role = std::move(role);
  n.children = std::move(children);
  return n;
}

RenderNode RenderNode::badge(std::string role, std::string text) {
  RenderNode n;
  n.kind = NodeKind::Badge;
  n.role = std::move(role);
  n.content = std::move(text);
  return n;
}

RenderNode RenderNode::caption(std::string role, std::string text) {
  RenderNode n;
  n.kind = NodeKind::CaptionText;
  n.role = std::move(role);
  n.content = std::move(text);
  return n;
}

RenderNode RenderNode::chart(std::string svg, int width, int height) {
  RenderNode n;
  n.kind = NodeKind::SvgChart;
  n.role = "chart";
  n.content = std::move(svg);
  n.width = width;
  n.height = height;
  return n;
}

const RenderNode* RenderNode::find(std::string_view r) const {
  if (role == r) return this;
  for (const auto& c : children) {
    if (const auto* hit = c.find(r)) return hit;
  }
  return nullptr;
}

std::vector<const RenderNode*> RenderNode::find_all(std::string_view r) const {
  std::vector<const RenderNode*> out;
  if (role == r) out.push_back(this);
  for (const auto& c : children) {
    auto sub = c.find_all(r);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

namespace detail {

std::string color_for(const std::vector<Scale>& scales, const std::string& measure, const std::string& dimension,
                      const std::string& category, std::size_t index) {
  for (const auto& s : scales) {
    if (s.field == dimension && !s.range.empty()) {
      auto it = std::find(s.domain.begin(), s.domain.end(), category);
      std::size_t i = it != s.domain.end() ? static_cast<std::size_t>(it - s.domain.begin()) : index;
      return s.range[i % s.range.size()];
    }
  }
  for (const auto& s : scales) {
    if (s.field == measure && !s.range.empty()) return s.range.front();
  }
  return palette()[index % palette().size()];
}

bool no_data(const ResultTable& result) {
  for (const auto& r : result.rows) {
    for (const auto& v : r.values) {
      if (v) return false;
    }
  }
  return true;
}

std::vector<double> ticks(double lo, double hi) { return {lo, (lo + hi) / 2, hi}; }

}  // namespace detail

namespace {

using detail::color_for;

bool highlighted(const std::vector<Annotation>& annotations, const std::string& dimension, const std::string& category) {
  for (const auto& a : annotations) {
    if (a.kind != AnnotationKind::Highlight) continue;
    if (const auto* t = std::get_if<DimensionValueTarget>(&a.target)) {
      if (t->dimension == dimension && display(t->value) == category) return true;
    }
    if (const auto* t = std::get_if<PointTarget>(&a.target)) {
      if (t->dimension == dimension && display(t->value) == category) return true;
    }
  }
  return false;
}

std::vector<double> reference_lines(const std::vector<Annotation>& annotations, const std::string& measure) {
  std::vector<double> out;
  for (const auto& a : annotations) {
    if (a.kind != AnnotationKind::ReferenceLine) continue;
    if (const auto* t = std::get_if<MeasureThresholdTarget>(&a.target); t && t->measure == measure) {
      out.push_back(t->value);
    }
  }
  return out;
}

std::string bars_svg(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                     const std::vector<Annotation>& annotations) {
  constexpr double kLabelRight = 140;
  constexpr double kPlotLeft = 148;
  constexpr double kPlotRight = 420;
  const auto dim_idx = detail::nominal_index(cfg.dimensions).value_or(0);
  const std::string& dim_name = cfg.dimensions[dim_idx].name;
  const std::string& measure = cfg.measures.front().name;
  const auto* goals = d.visual.goal_param ? cfg.per_category(*d.visual.goal_param) : nullptr;
  auto refs = reference_lines(annotations, measure);

  double lo = 0;
  double hi = 0;
  for (const auto& r : result.rows) {
    if (r.values[0]) {
      lo = std::min(lo, *r.values[0]);
      hi = std::max(hi, *r.values[0]);
    }
    if (goals) {
      if (auto it = goals->find(display(r.keys[dim_idx])); it != goals->end()) {
        lo = std::min(lo, it->second);
        hi = std::max(hi, it->second);
      }
    }
  }
  for (double v : refs) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi == lo) hi = lo + 1;
  auto x = [&](double v) { return kPlotLeft + (v - lo) / (hi - lo) * (kPlotRight - kPlotLeft); };

  const int rows = static_cast<int>(result.rows.size());
  SvgWriter svg(kChartWidth, kBarRowHeight * rows);
  svg.title(d.id + ": " + measure + " by " + dim_name);
  for (int i = 0; i < rows; ++i) {
    const auto& row = result.rows[static_cast<std::size_t>(i)];
    const double y0 = i * kBarRowHeight;
    std::string category = display(row.keys[dim_idx]);
    std::optional<double> value = row.values[0];
    std::optional<double> goal;
    if (goals) {
      if (auto it = goals->find(category); it != goals->end()) goal = it->second;
    }
    svg.open("g", {{"class", "row"}, {"data-category", category}});
    if (goal) {
      svg.element("rect", {{"class", "goal"},
                           {"x", coord(x(std::min(0.0, *goal)))},
                           {"y", coord(y0 + 12)},
                           {"width", coord(std::abs(x(*goal) - x(0)))},
                           {"height", "40"},
                           {"fill", "#d9d9d9"}});
    }
    if (value) {
      std::string cls = "bar";
      if (goal && *value >= *goal) cls += " met";
      bool hl = highlighted(annotations, dim_name, category);
      if (hl) cls += " highlight";
      std::string fill = color_for(cfg.scales, measure, dim_name, category, static_cast<std::size_t>(i));
      svg.element("rect", {{"class", cls},
                           {"x", coord(x(std::min(0.0, *value)))},
                           {"y", coord(y0 + 20)},
                           {"width", coord(std::abs(x(*value) - x(0)))},
                           {"height", "24"},
                           {"fill", fill},
                           {"stroke", hl ? "#222222" : "none"}});
    }
    svg.text({{"class", "label"}, {"x", coord(kLabelRight)}, {"y", coord(y0 + 36)}, {"text-anchor", "end"},
              {"font-size", "12"}},
             category);
    double end = value ? x(std::max(0.0, *value)) : x(0);
    if (goal) end = std::max(end, x(std::max(0.0, *goal)));
    svg.text({{"class", "value"}, {"x", coord(end + 6)}, {"y", coord(y0 + 36)}, {"font-size", "12"}},
             format_display(value));
    svg.close("g");
  }
  for (double v : refs) {
    svg.element("line", {{"class", "annotation reference-line"},
                         {"x1", coord(x(v))},
                         {"x2", coord(x(v))},
                         {"y1", "0"},
                         {"y2", coord(kBarRowHeight * rows)},
                         {"stroke", "#222222"},
                         {"stroke-dasharray", "2 2"}});
  }
  return svg.finish();
}

std::string line_svg(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                     const std::vector<Annotation>& annotations) {
  constexpr double kLeft = 56;
  constexpr double kRight = kChartWidth - 16;
  constexpr double kTop = 16;
  constexpr double kBottom = kSeriesHeight - 32;
  const std::string& measure = cfg.measures.front().name;
  auto nominal = detail::nominal_index(cfg.dimensions);
  std::string series_dim = nominal ? cfg.dimensions[*nominal].name : "";
  auto series = detail::collect_series(cfg, result);
  std::optional<double> upper = d.visual.upper_param ? cfg.number(*d.visual.upper_param) : std::nullopt;
  std::optional<double> lower = d.visual.lower_param ? cfg.number(*d.visual.lower_param) : std::nullopt;
  auto refs = reference_lines(annotations, measure);

  std::optional<Date> dmin, dmax;
  std::vector<double> seen;
  auto widen = [&](double v) { seen.push_back(v); };
  for (const auto& [name, pts] : series) {
    for (const auto& p : pts) {
      dmin = dmin ? std::min(*dmin, p.date) : p.date;
      dmax = dmax ? std::max(*dmax, p.date) : p.date;
      widen(p.value);
    }
  }
  if (upper) widen(*upper);
  if (lower) widen(*lower);
  for (double v : refs) widen(v);
  double lo = seen.empty() ? 0 : *std::min_element(seen.begin(), seen.end());
  double hi = seen.empty() ? 1 : *std::max_element(seen.begin(), seen.end());
  if (hi == lo) {
    lo -= 1;
    hi += 1;
  }
  double pad = (hi - lo) * 0.05;
  lo -= pad;
  hi += pad;
  auto y = [&](double v) { return kBottom - (v - lo) / (hi - lo) * (kBottom - kTop); };
  auto x = [&](const Date& dt) {
    if (!dmin || *dmin == *dmax) return (kLeft + kRight) / 2;
    return kLeft + static_cast<double>(days_between(*dmin, dt)) / static_cast<double>(days_between(*dmin, *dmax)) *
                       (kRight - kLeft);
  };

  SvgWriter svg(kChartWidth, kSeriesHeight);
  svg.title(d.id + ": " + measure + " over time");
  svg.element("line", {{"class", "axis"}, {"x1", coord(kLeft)}, {"x2", coord(kRight)}, {"y1", coord(kBottom)},
                       {"y2", coord(kBottom)}, {"stroke", "#888888"}});
  svg.element("line", {{"class", "axis"}, {"x1", coord(kLeft)}, {"x2", coord(kLeft)}, {"y1", coord(kTop)},
                       {"y2", coord(kBottom)}, {"stroke", "#888888"}});
  for (double t : detail::ticks(lo + pad, hi - pad)) {
    svg.text({{"class", "tick"}, {"x", coord(kLeft - 6)}, {"y", coord(y(t) + 4)}, {"text-anchor", "end"},
              {"font-size", "12"}},
             format_display(t));
  }
  if (dmin) {
    svg.text({{"class", "label"}, {"x", coord(kLeft)}, {"y", coord(kBottom + 20)}, {"font-size", "12"}},
             dmin->iso());
    if (*dmax != *dmin) {
      svg.text({{"class", "label"}, {"x", coord(kRight)}, {"y", coord(kBottom + 20)}, {"text-anchor", "end"},
                {"font-size", "12"}},
               dmax->iso());
    }
  }
  auto rule = [&](double v, const char* cls) {
    svg.element("line", {{"class", cls}, {"x1", coord(kLeft)}, {"x2", coord(kRight)}, {"y1", coord(y(v))},
                         {"y2", coord(y(v))}, {"stroke", "#e15759"}, {"stroke-dasharray", "6 4"}});
    svg.text({{"class", "threshold-label"}, {"x", coord(kRight)}, {"y", coord(y(v) - 4)}, {"text-anchor", "end"},
              {"font-size", "12"}},
             format_display(v));
  };
  if (upper) rule(*upper, "threshold upper");
  if (lower) rule(*lower, "threshold lower");
  for (double v : refs) {
    svg.element("line", {{"class", "annotation reference-line"}, {"x1", coord(kLeft)}, {"x2", coord(kRight)},
                         {"y1", coord(y(v))}, {"y2", coord(y(v))}, {"stroke", "#222222"},
                         {"stroke-dasharray", "2 2"}});
  }

  std::size_t index = 0;
  for (const auto& [name, pts] : series) {
    std::string color = color_for(cfg.scales, measure, series_dim, name, index);
    std::string points;
    for (const auto& p : pts) {
      if (!points.empty()) points += ' ';
      points += coord(x(p.date)) + "," + coord(y(p.value));
    }
    if (pts.size() > 1) {
      svg.element("polyline", {{"class", "series"}, {"data-series", name}, {"fill", "none"}, {"stroke", color},
                               {"stroke-width", "2"}, {"points", points}});
    } else {
      svg.element("circle", {{"class", "series point"}, {"data-series", name}, {"cx", coord(x(pts[0].date))},
                             {"cy", coord(y(pts[0].value))}, {"r", "3"}, {"fill", color}});
    }
    for (const auto& p : pts) {
      if ((upper && p.value > *upper) || (lower && p.value < *lower)) {
        svg.element("circle", {{"class", "breach"}, {"cx", coord(x(p.date))}, {"cy", coord(y(p.value))}, {"r", "4"},
                               {"fill", "#e15759"}});
      }
    }
    if (!name.empty()) {
      svg.text({{"class", "legend"}, {"x", coord(kLeft + 8)}, {"y", coord(kTop + 12 + 14 * index)},
                {"fill", color}, {"font-size", "12"}},
               name);
    }
    ++index;
  }
  return svg.finish();
}

std::string describe_target(const AnnotationTarget& target) {
  return std::visit(
      [](const auto& t) -> std::string {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, DimensionValueTarget>) {
          return t.dimension + " " + display(t.value);
        } else if constexpr (std::is_same_v<T, MeasureThresholdTarget>) {
          return t.measure + " at " + format_display(t.value);
        } else {
          return t.measure + " for " + t.dimension + " " + display(t.value);
        }
      },
      target);
}

}  // namespace

std::string render_design_svg(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                              const std::vector<Annotation>& annotations) {
  return d.visual.kind == VisualKind::Bars ? bars_svg(cfg, d, result, annotations)
                                           : line_svg(cfg, d, result, annotations);
}

RenderNode render_template(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result,
                           Appearance appearance, const std::vector<Annotation>& annotations) {
  auto out = RenderNode::group("template");
  if (detail::no_data(result)) {
    out.children.push_back(RenderNode::badge("no-data", "no data in time frame"));
    return out;
  }
  if (appearance != Appearance::Text) {
    int height = d.visual.kind == VisualKind::Bars ? kBarRowHeight * static_cast<int>(result.rows.size())
                                                   : kSeriesHeight;
    out.children.push_back(RenderNode::chart(render_design_svg(cfg, d, result, annotations), kChartWidth, height));
  }
  if (appearance != Appearance::Visual) {
    out.children.push_back(RenderNode::caption("template-text", render_caption(cfg, d, result)));
  }
  return out;
}

RenderNode render_component(const ComponentSpec& c, const ResultTable& result, const Catalog& catalog,
                            const RenderOptions& options) {
  auto out = RenderNode::group("component");
  TemplateConfig cfg = transfer(c);
  if (c.template_binding) {
    const auto& design = catalog.require(c.template_binding->design_id);
    auto observed = result_categories(result, c.dimensions);
    cfg = mediate_config(c, design, c.template_binding->parameters, &observed, options.known_categories);
    out.children.push_back(render_template(cfg, design, result, c.appearance, c.annotations));
  } else if (detail::no_data(result)) {
    out.children.push_back(RenderNode::badge("no-data", "no data in time frame"));
  } else {
    out.children.push_back(render_original(c, result, options.width));
  }
  for (const auto& a : c.annotations) {
    if (a.text) out.children.push_back(RenderNode::caption("annotation", describe_target(a.target) + ": " + *a.text));
  }
  if (c.caption) out.children.push_back(RenderNode::caption("caption", *c.caption));
  if (c.custom_text) {
    out.children.push_back(RenderNode::caption("custom-text", render_text_expression(*c.custom_text, cfg, result)));
  }
  return out;
}

}  // namespace dashsnap::templates
