#include <algorithm>
#include <map>

#include "dashsnap/core/error.hpp"
#include "dashsnap/templates/number_format.hpp"
#include "dashsnap/templates/render.hpp"
#include "dashsnap/templates/svg.hpp"
#include "internal.hpp"

namespace dashsnap::templates {

namespace {

struct Frame {
  int width;
  int height;
  int font;
  bool ticks;
};

std::size_t plotted_measure(const ComponentSpec& c, const ResultTable& result) {
  for (const char* channel : {"y", "x", "size"}) {
    auto it = c.original_design.encodings.find(channel);
    if (it == c.original_design.encodings.end()) continue;
    if (auto m = result.measure_index(it->second)) return *m;
  }
  if (result.measure_names.empty()) throw Error(Code::UnsupportedMark, "nothing to plot: component has no measure");
  return 0;
}

std::string row_label(const ResultTable::Row& row) {
  if (row.keys.empty()) return "Total";
  std::string out;
  for (const auto& k : row.keys) {
    if (!out.empty()) out += " / ";
    out += display(k);
  }
  return out;
}

std::pair<double, double> value_domain(const ResultTable& result, std::size_t m, bool include_zero) {
  std::optional<double> lo, hi;
  if (include_zero) lo = hi = 0.0;
  for (const auto& r : result.rows) {
    if (!r.values[m]) continue;
    lo = lo ? std::min(*lo, *r.values[m]) : *r.values[m];
    hi = hi ? std::max(*hi, *r.values[m]) : *r.values[m];
  }
  double a = lo.value_or(0);
  double b = hi.value_or(1);
  if (a == b) {
    if (include_zero) {
      b = a + 1;
    } else {
      a -= 1;
      b += 1;
    }
  }
  return {a, b};
}

std::string bar_chart(const ComponentSpec& c, const ResultTable& result, const Frame& f) {
  const std::size_t m = plotted_measure(c, result);
  const std::string& measure = result.measure_names[m];
  const std::string dim = result.dimension_names.empty() ? "" : result.dimension_names.front();
  const double label_right = f.width * 0.3;
  const double left = label_right + 8;
  const double right = f.width - 48.0;
  const double axis_y = f.height - 24.0;
  const double band = axis_y / static_cast<double>(std::max<std::size_t>(1, result.rows.size()));
  auto [lo, hi] = value_domain(result, m, true);
  auto x = [&](double v) { return left + (v - lo) / (hi - lo) * (right - left); };
  const std::string fs = std::to_string(f.font);

  SvgWriter svg(f.width, f.height);
  svg.title(measure + (dim.empty() ? "" : " by " + dim));
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const auto& row = result.rows[i];
    const double y0 = static_cast<double>(i) * band;
    std::string label = row_label(row);
    std::string category = row.keys.empty() ? label : display(row.keys.front());
    svg.open("g", {{"class", "row"}, {"data-category", label}});
    if (const auto& v = row.values[m]) {
      svg.element("rect", {{"class", "bar"},
                           {"x", coord(x(std::min(0.0, *v)))},
                           {"y", coord(y0 + band * 0.2)},
                           {"width", coord(std::abs(x(*v) - x(0)))},
                           {"height", coord(band * 0.6)},
                           {"fill", detail::color_for(c.original_design.scales, measure, dim, category, i)}});
    }
    svg.text({{"class", "label"}, {"x", coord(label_right)}, {"y", coord(y0 + band / 2 + f.font / 3.0)},
              {"text-anchor", "end"}, {"font-size", fs}},
             label);
    svg.close("g");
  }
  svg.element("line", {{"class", "axis"}, {"x1", coord(left)}, {"x2", coord(right)}, {"y1", coord(axis_y)},
                       {"y2", coord(axis_y)}, {"stroke", "#888888"}});
  if (f.ticks) {
    for (double t : detail::ticks(lo, hi)) {
      svg.text({{"class", "tick"}, {"x", coord(x(t))}, {"y", coord(axis_y + 16)}, {"text-anchor", "middle"},
                {"font-size", fs}},
               format_display(t));
    }
  }
  return svg.finish();
}

std::size_t x_dimension(const ComponentSpec& c, const ResultTable& result) {
  if (auto it = c.original_design.encodings.find("x"); it != c.original_design.encodings.end()) {
    if (auto d = result.dimension_index(it->second)) return *d;
  }
  for (std::size_t i = 0; i < c.dimensions.size(); ++i) {
    if (c.dimensions[i].kind == DimensionKind::Temporal) {
      if (auto d = result.dimension_index(c.dimensions[i].name)) return *d;
    }
  }
  return 0;
}

std::string xy_chart(const ComponentSpec& c, const ResultTable& result, const Frame& f) {
  if (result.dimension_names.empty()) {
    throw Error(Code::UnsupportedMark, std::string(name_of(c.original_design.mark)) + " needs a dimension for its x axis");
  }
  const Mark mark = c.original_design.mark;
  const std::size_t m = plotted_measure(c, result);
  const std::string& measure = result.measure_names[m];
  const std::size_t xd = x_dimension(c, result);
  std::optional<std::size_t> sd;
  for (std::size_t i = 0; i < result.dimension_names.size(); ++i) {
    if (i != xd) {
      sd = i;
      break;
    }
  }
  const std::string series_dim = sd ? result.dimension_names[*sd] : "";

  // x positions: dates on a time axis, anything else in order of first appearance.
  bool by_date = true;
  std::vector<std::string> order;
  std::optional<Date> dmin, dmax;
  for (const auto& r : result.rows) {
    const Cell& k = r.keys[xd];
    if (const auto* d = std::get_if<Date>(&k)) {
      dmin = dmin ? std::min(*dmin, *d) : *d;
      dmax = dmax ? std::max(*dmax, *d) : *d;
    } else {
      by_date = false;
    }
    std::string label = display(k);
    if (std::find(order.begin(), order.end(), label) == order.end()) order.push_back(label);
  }
  const double left = f.ticks ? 56 : 16;
  const double right = f.width - 16.0;
  const double top = 16;
  const double bottom = f.height - 32.0;
  auto x = [&](const Cell& k) {
    if (by_date && dmin) {
      if (*dmin == *dmax) return (left + right) / 2;
      return left + static_cast<double>(days_between(*dmin, std::get<Date>(k))) /
                        static_cast<double>(days_between(*dmin, *dmax)) * (right - left);
    }
    auto pos = static_cast<double>(std::find(order.begin(), order.end(), display(k)) - order.begin());
    if (order.size() < 2) return (left + right) / 2;
    return left + pos / static_cast<double>(order.size() - 1) * (right - left);
  };
  auto [lo, hi] = value_domain(result, m, mark == Mark::Area);
  auto y = [&](double v) { return bottom - (v - lo) / (hi - lo) * (bottom - top); };
  const std::string fs = std::to_string(f.font);

  std::map<std::string, std::vector<std::pair<double, double>>> series;
  std::vector<std::string> series_order;
  for (const auto& r : result.rows) {
    if (!r.values[m]) continue;
    std::string name = sd ? display(r.keys[*sd]) : "";
    if (!series.count(name)) series_order.push_back(name);
    series[name].emplace_back(x(r.keys[xd]), y(*r.values[m]));
  }

  SvgWriter svg(f.width, f.height);
  svg.title(measure + " by " + result.dimension_names[xd]);
  svg.element("line", {{"class", "axis"}, {"x1", coord(left)}, {"x2", coord(right)}, {"y1", coord(bottom)},
                       {"y2", coord(bottom)}, {"stroke", "#888888"}});
  if (f.ticks) {
    for (double t : detail::ticks(lo, hi)) {
      svg.text({{"class", "tick"}, {"x", coord(left - 6)}, {"y", coord(y(t) + 4)}, {"text-anchor", "end"},
                {"font-size", fs}},
               format_display(t));
    }
  }
  if (!order.empty()) {
    std::string first = by_date && dmin ? dmin->iso() : order.front();
    std::string last = by_date && dmax ? dmax->iso() : order.back();
    svg.text({{"class", "label"}, {"x", coord(left)}, {"y", coord(bottom + 20)}, {"font-size", fs}}, first);
    if (last != first) {
      svg.text({{"class", "label"}, {"x", coord(right)}, {"y", coord(bottom + 20)}, {"text-anchor", "end"},
                {"font-size", fs}},
               last);
    }
  }
  for (std::size_t i = 0; i < series_order.size(); ++i) {
    const std::string& name = series_order[i];
    auto pts = series[name];
    std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string color = detail::color_for(c.original_design.scales, measure, series_dim, name, i);
    std::string points;
    for (const auto& [px, py] : pts) {
      if (!points.empty()) points += ' ';
      points += coord(px) + "," + coord(py);
    }
    if (mark == Mark::Line && pts.size() > 1) {
      svg.element("polyline", {{"class", "series"}, {"data-series", name}, {"fill", "none"}, {"stroke", color},
                               {"stroke-width", "2"}, {"points", points}});
    } else if (mark == Mark::Area && pts.size() > 1) {
      std::string poly = coord(pts.front().first) + "," + coord(y(std::max(lo, 0.0))) + " " + points + " " +
                         coord(pts.back().first) + "," + coord(y(std::max(lo, 0.0)));
      svg.element("polygon", {{"class", "area"}, {"data-series", name}, {"fill", color}, {"fill-opacity", "0.6"},
                              {"points", poly}});
    } else {
      for (const auto& [px, py] : pts) {
        svg.element("circle", {{"class", "point"}, {"data-series", name}, {"cx", coord(px)}, {"cy", coord(py)},
                               {"r", "3"}, {"fill", color}});
      }
    }
    if (!name.empty()) {
      svg.text({{"class", "legend"}, {"x", coord(left + 8)}, {"y", coord(top + 12 + 14.0 * static_cast<double>(i))},
                {"fill", color}, {"font-size", fs}},
               name);
    }
  }
  return svg.finish();
}

std::string metric_chart(const ComponentSpec& c, const ResultTable& result, const Frame& f) {
  SvgWriter svg(f.width, f.height);
  svg.title(c.id);
  const ResultTable::Row* row = result.rows.empty() ? nullptr : &result.rows.front();
  const int big = f.font * 2;
  for (std::size_t i = 0; i < result.measure_names.size(); ++i) {
    std::string text = result.measure_names[i] + ": " + format_display(row ? row->values[i] : std::nullopt);
    if (const auto* m = c.find_measure(result.measure_names[i]); m && m->unit && row && row->values[i]) {
      text += " " + *m->unit;
    }
    svg.text({{"class", "metric"}, {"x", "16"}, {"y", coord(16 + big + static_cast<double>(i) * (big + 12))},
              {"font-size", std::to_string(big)}},
             text);
  }
  return svg.finish();
}

}  // namespace

RenderNode render_original(const ComponentSpec& c, const ResultTable& result, int width, int height) {
  Frame f{width, height, width < kCompactWidth ? 10 : 12, width >= kCompactWidth};
  std::string svg;
  switch (c.original_design.mark) {
    case Mark::Bar:
      if (f.height <= 0) f.height = static_cast<int>(std::max<std::size_t>(1, result.rows.size())) * 48 + 24;
      svg = bar_chart(c, result, f);
      break;
    case Mark::Line:
    case Mark::Area:
    case Mark::Point:
      if (f.height <= 0) f.height = std::max(120, width / 2);
      svg = xy_chart(c, result, f);
      break;
    case Mark::TextMetric:
      if (f.height <= 0) f.height = static_cast<int>(result.measure_names.size()) * (f.font * 2 + 12) + 24;
      svg = metric_chart(c, result, f);
      break;
    default:
      throw Error(Code::UnsupportedMark, "no renderer for mark " + std::string(name_of(c.original_design.mark)));
  }
  auto out = RenderNode::group("original");
  out.children.push_back(RenderNode::chart(std::move(svg), f.width, f.height));
  return out;
}

}  // namespace dashsnap::templates
