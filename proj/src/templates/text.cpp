#include <algorithm>
#include <functional>
#include <map>

#include "dashsnap/core/error.hpp"
#include "dashsnap/templates/number_format.hpp"
#include "dashsnap/templates/render.hpp"
#include "internal.hpp"

namespace dashsnap::templates {

namespace detail {

std::optional<std::size_t> nominal_index(const std::vector<Dimension>& dims) {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].kind == DimensionKind::Nominal) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> temporal_index(const std::vector<Dimension>& dims) {
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i].kind == DimensionKind::Temporal) return i;
  }
  return std::nullopt;
}

const std::map<std::string, double>* goals_of(const TemplateConfig& cfg, const TemplateDesign* d) {
  if (d && d->visual.goal_param) return cfg.per_category(*d->visual.goal_param);
  for (const auto& [name, v] : cfg.parameters) {
    if (const auto* m = std::get_if<std::map<std::string, double>>(&v)) return m;
  }
  return nullptr;
}

std::map<std::string, std::vector<SeriesPoint>> collect_series(const TemplateConfig& cfg, const ResultTable& result) {
  std::map<std::string, std::vector<SeriesPoint>> series;
  auto t = temporal_index(cfg.dimensions);
  auto n = nominal_index(cfg.dimensions);
  if (!t) return series;
  for (const auto& r : result.rows) {
    const auto* date = std::get_if<Date>(&r.keys[*t]);
    if (!date || !r.values[0]) continue;
    series[n ? display(r.keys[*n]) : std::string()].push_back({*date, *r.values[0]});
  }
  for (auto& [k, pts] : series) {
    std::sort(pts.begin(), pts.end(), [](const SeriesPoint& a, const SeriesPoint& b) { return a.date < b.date; });
  }
  return series;
}

}  // namespace detail

namespace {

using detail::goals_of;
using detail::nominal_index;
using detail::temporal_index;

using Resolver = std::function<std::optional<std::string>(const Token&)>;

std::string substitute(std::string_view text, const Resolver& resolve) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if ((c == '{' || c == '}') && i + 1 < text.size() && text[i + 1] == c) {
      out += c;
      ++i;
      continue;
    }
    if (c != '{') {
      out += c;
      continue;
    }
    auto close = text.find('}', i);
    if (close == std::string_view::npos) throw Error(Code::UnknownToken, "unterminated token");
    auto tokens = scan_tokens(text.substr(i, close - i + 1));
    const Token& t = tokens.front();
    auto value = resolve(t);
    if (!value) {
      std::string shown = t.name + (t.argument ? "(" + *t.argument + ")" : "");
      throw Error(Code::UnknownToken, "unknown token '{" + shown + "}'");
    }
    out += *value;
    i = close;
  }
  return out;
}

std::optional<std::string> global_token(const Token& t, const TemplateConfig& cfg) {
  if (t.argument) return std::nullopt;
  if (t.name == "measure") return cfg.measures.empty() ? "" : cfg.measures.front().name;
  if (t.name == "dimension") return cfg.dimensions.empty() ? "" : cfg.dimensions.front().name;
  if (t.name == "unit") {
    if (cfg.measures.empty() || !cfg.measures.front().unit) return "";
    return *cfg.measures.front().unit;
  }
  if (t.name == "time-frame") return cfg.time_frame.describe();
  if (auto it = cfg.parameters.find(t.name); it != cfg.parameters.end()) {
    if (const auto* d = std::get_if<double>(&it->second)) return format_display(*d);
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
  }
  return std::nullopt;
}

double total_of(const ResultTable& result) {
  double total = 0;
  for (const auto& r : result.rows) {
    if (!r.values.empty() && r.values[0]) total += *r.values[0];
  }
  return total;
}

std::string pct_text(std::optional<double> value, double goal) {
  if (!value || goal == 0) return "n/a";
  return format_percent(*value / goal);
}

std::string breakdown_caption(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result) {
  auto dim = nominal_index(cfg.dimensions).value_or(0);
  const auto* goals = goals_of(cfg, &d);
  std::vector<std::string> sentences;
  for (const auto& row : result.rows) {
    std::string category = display(row.keys[dim]);
    std::optional<double> value = row.values[0];
    std::optional<double> goal;
    if (goals) {
      if (auto it = goals->find(category); it != goals->end()) goal = it->second;
    }
    sentences.push_back(substitute(*d.text.per_category, [&](const Token& t) -> std::optional<std::string> {
      if (t.argument) return std::nullopt;
      if (t.name == "category") return category;
      if (t.name == "value") return format_display(value);
      if (goal) {
        if (t.name == "goal") return format_display(*goal);
        if (t.name == "pct_of_goal") return pct_text(value, *goal);
        if (t.name == "met") return value && *value >= *goal ? ", met" : "";
      }
      return global_token(t, cfg);
    }));
  }
  auto total_goal = cfg.number("total-goal");
  if (d.text.total && total_goal) {
    double total = total_of(result);
    sentences.push_back(substitute(*d.text.total, [&](const Token& t) -> std::optional<std::string> {
      if (t.argument) return std::nullopt;
      if (t.name == "total") return format_display(total);
      if (t.name == "total_goal") return format_display(*total_goal);
      if (t.name == "total_pct_of_goal") return pct_text(total, *total_goal);
      return global_token(t, cfg);
    }));
  }
  std::string out;
  for (const auto& s : sentences) out += (out.empty() ? "" : " ") + s;
  return out;
}

}  // namespace

std::vector<std::string> result_categories(const ResultTable& result, const std::vector<Dimension>& dims) {
  std::vector<std::string> out;
  auto dim = nominal_index(dims);
  if (!dim) return out;
  for (const auto& r : result.rows) {
    auto c = display(r.keys[*dim]);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::string render_caption(const TemplateConfig& cfg, const TemplateDesign& d, const ResultTable& result) {
  if (d.visual.kind == VisualKind::Bars) return breakdown_caption(cfg, d, result);
  std::string out;
  for (const auto& [name, pts] : detail::collect_series(cfg, result)) {
    if (pts.empty()) continue;
    const auto& first = pts.front();
    const auto& last = pts.back();
    std::string change;
    if (last.value > first.value) {
      change = "rose from " + format_display(first.value) + " to " + format_display(last.value);
    } else if (last.value < first.value) {
      change = "fell from " + format_display(first.value) + " to " + format_display(last.value);
    } else {
      change = "held at " + format_display(first.value);
    }
    auto sentence = substitute(*d.text.per_series, [&](const Token& t) -> std::optional<std::string> {
      if (t.argument) return std::nullopt;
      if (t.name == "series") return name.empty() ? "" : " for " + name;
      if (t.name == "start") return first.date.iso();
      if (t.name == "end") return last.date.iso();
      if (t.name == "first") return format_display(first.value);
      if (t.name == "last") return format_display(last.value);
      if (t.name == "change") return change;
      return global_token(t, cfg);
    });
    out += (out.empty() ? "" : " ") + sentence;
  }
  return out;
}

std::string render_text_expression(const std::string& expr, const TemplateConfig& cfg, const ResultTable& result) {
  auto dim = nominal_index(cfg.dimensions);
  auto row_for = [&](const std::string& g) -> const ResultTable::Row* {
    if (!dim) return nullptr;
    for (const auto& r : result.rows) {
      if (display(r.keys[*dim]) == g) return &r;
    }
    return nullptr;
  };
  const auto* goals = goals_of(cfg, nullptr);
  auto goal_for = [&](const std::string& g) -> double {
    if (!goals) throw Error(Code::ParamMissing, "custom text uses a goal but no goal parameter is bound");
    auto it = goals->find(g);
    if (it == goals->end()) throw Error(Code::ParamCategoryGap, "no goal for '" + g + "'");
    return it->second;
  };
  return substitute(expr, [&](const Token& t) -> std::optional<std::string> {
    if (t.argument) {
      const auto& g = *t.argument;
      if (t.name == "value") {
        const auto* r = row_for(g);
        return r ? format_display(r->values[0]) : "no value";
      }
      if (t.name == "goal") return format_display(goal_for(g));
      if (t.name == "pct_of_goal") {
        const auto* r = row_for(g);
        return pct_text(r ? r->values[0] : std::nullopt, goal_for(g));
      }
      return std::nullopt;
    }
    if (t.name == "total") return format_display(total_of(result));
    return global_token(t, cfg);
  });
}

}  // namespace dashsnap::templates
