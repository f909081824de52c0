#include <sstream>

#include "dashsnap/spec_io/spec_io.hpp"
#include "dashsnap/spec_io/yaml_scalar.hpp"

namespace dashsnap::spec_io {

namespace {

/// Line-oriented block YAML writer. `item` starts a sequence entry whose first
/// key shares the dash line.
class Writer {
 public:
  void scalar(int indent, std::string_view key, const std::string& value) {
    line(indent, std::string(key) + ": " + value);
  }
  void text(int indent, std::string_view key, std::string_view value) { scalar(indent, key, quote_string(value)); }
  void open(int indent, std::string_view key) { line(indent, std::string(key) + ":"); }
  void item(int indent) { pending_dash_ = indent; }
  void item_scalar(int indent, const std::string& value) { line(indent, "- " + value); }

  std::string str() const { return out_.str(); }

 private:
  void line(int indent, const std::string& body) {
    if (pending_dash_ >= 0) {
      out_ << std::string(pending_dash_, ' ') << "- " << body << '\n';
      pending_dash_ = -1;
      return;
    }
    out_ << std::string(indent, ' ') << body << '\n';
  }

  std::ostringstream out_;
  int pending_dash_ = -1;
};

void write_filter(Writer& w, int in, const DataFilter& f) {
  w.text(in, "column", f.column);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, EqualsPredicate>) {
          w.scalar(in, "equals", emit_scalar(p.value));
        } else if constexpr (std::is_same_v<T, OneOfPredicate>) {
          w.open(in, "one-of");
          for (const auto& v : p.values) w.item_scalar(in + 2, emit_scalar(v));
        } else if constexpr (std::is_same_v<T, RangePredicate>) {
          w.open(in, "range");
          w.scalar(in + 2, "min", format_number(p.min));
          w.scalar(in + 2, "max", format_number(p.max));
        } else {
          w.open(in, "date-range");
          w.scalar(in + 2, "start", p.start.iso());
          w.scalar(in + 2, "end", p.end.iso());
        }
      },
      f.predicate);
}

void write_filters(Writer& w, int in, std::string_view key, const std::vector<DataFilter>& filters) {
  if (filters.empty()) return;
  w.open(in, key);
  for (const auto& f : filters) {
    w.item(in + 2);
    write_filter(w, in + 4, f);
  }
}

void write_measure(Writer& w, int in, const Measure& m) {
  w.text(in, "name", m.name);
  w.scalar(in, "kind", std::string(name_of(m.kind)));
  if (m.source_column) w.text(in, "source-column", *m.source_column);
  if (m.aggregate) w.scalar(in, "aggregate", std::string(name_of(*m.aggregate)));
  if (m.expression) w.text(in, "expression", *m.expression);
  if (m.unit) w.text(in, "unit", *m.unit);
}

void write_design(Writer& w, int in, const OriginalDesign& d) {
  w.scalar(in, "mark", std::string(name_of(d.mark)));
  if (!d.encodings.empty()) {
    w.open(in, "encodings");
    for (auto ch : {"x", "y", "color"}) {
      if (auto it = d.encodings.find(ch); it != d.encodings.end()) w.text(in + 2, ch, it->second);
    }
  }
  if (!d.scales.empty()) {
    w.open(in, "scales");
    for (const auto& s : d.scales) {
      w.item(in + 2);
      w.text(in + 4, "field", s.field);
      w.text(in + 4, "type", s.type);
      if (!s.domain.empty()) {
        w.open(in + 4, "domain");
        for (const auto& v : s.domain) w.item_scalar(in + 6, quote_string(v));
      }
      if (!s.range.empty()) {
        w.open(in + 4, "range");
        for (const auto& v : s.range) w.item_scalar(in + 6, quote_string(v));
      }
    }
  }
}

void write_annotation(Writer& w, int in, const Annotation& a) {
  w.scalar(in, "kind", std::string(name_of(a.kind)));
  w.open(in, "target");
  std::visit(
      [&](const auto& t) {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, DimensionValueTarget>) {
          w.text(in + 2, "dimension", t.dimension);
          w.scalar(in + 2, "value", emit_scalar(t.value));
        } else if constexpr (std::is_same_v<T, MeasureThresholdTarget>) {
          w.text(in + 2, "measure", t.measure);
          w.scalar(in + 2, "value", format_number(t.value));
        } else {
          w.text(in + 2, "dimension", t.dimension);
          w.text(in + 2, "measure", t.measure);
          w.scalar(in + 2, "value", emit_scalar(t.value));
        }
      },
      a.target);
  if (a.text) w.text(in, "text", *a.text);
}

void write_interactive(Writer& w, int in, const InteractiveFilter& f) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, DropdownFilter>) {
          w.open(in, "dropdown");
          w.text(in + 2, "column", v.column);
          w.open(in + 2, "values");
          for (const auto& x : v.values) w.item_scalar(in + 4, emit_scalar(x));
        } else if constexpr (std::is_same_v<T, SliderFilter>) {
          w.open(in, "slider");
          w.text(in + 2, "column", v.column);
          w.scalar(in + 2, "min", format_number(v.min));
          w.scalar(in + 2, "max", format_number(v.max));
        } else {
          w.open(in, "macro");
          w.text(in + 2, "name", v.name);
          write_filters(w, in + 2, "filters", v.filters);
        }
      },
      f);
}

void write_component(Writer& w, int in, const ComponentSpec& c) {
  w.text(in, "id", c.id);
  if (c.panel) w.text(in, "panel", *c.panel);
  if (c.worksheet) w.text(in, "worksheet", *c.worksheet);
  w.text(in, "data-source", c.data_source);
  write_filters(w, in, "data-filters", c.data_filters);
  w.open(in, "measures");
  for (const auto& m : c.measures) {
    w.item(in + 2);
    write_measure(w, in + 4, m);
  }
  if (!c.dimensions.empty()) {
    w.open(in, "dimensions");
    for (const auto& d : c.dimensions) {
      w.item(in + 2);
      w.text(in + 4, "name", d.name);
      w.text(in + 4, "source-column", d.source_column);
      w.scalar(in + 4, "kind", std::string(name_of(d.kind)));
    }
  }
  w.open(in, "time-frame");
  w.text(in + 2, "field", c.time_frame.field);
  w.scalar(in + 2, "start", c.time_frame.start.iso());
  w.scalar(in + 2, "duration", c.time_frame.duration.str());
  w.open(in, "original-design");
  write_design(w, in + 2, c.original_design);
  w.scalar(in, "appearance", std::string(name_of(c.appearance)));
  if (c.template_binding) {
    const auto& b = *c.template_binding;
    w.open(in, "template");
    w.text(in + 2, "design", b.design_id);
    if (!b.parameters.empty()) {
      w.open(in + 2, "template-config");
      w.open(in + 4, "parameters");
      for (const auto& [name, value] : b.parameters) {
        if (auto* num = std::get_if<double>(&value)) {
          w.scalar(in + 6, quote_string(name), format_number(*num));
        } else if (auto* txt = std::get_if<std::string>(&value)) {
          // text parameters that look numeric must stay text
          w.scalar(in + 6, quote_string(name), double_quoted(*txt));
        } else {
          const auto& per = std::get<std::map<std::string, double>>(value);
          if (per.empty()) {
            w.scalar(in + 6, quote_string(name), "{}");
          } else {
            w.open(in + 6, quote_string(name));
            for (const auto& [cat, v] : per) w.scalar(in + 8, quote_string(cat), format_number(v));
          }
        }
      }
    }
  }
  if (c.caption) w.text(in, "caption", *c.caption);
  if (c.custom_text) w.text(in, "custom-text", *c.custom_text);
  if (!c.annotations.empty()) {
    w.open(in, "annotations");
    for (const auto& a : c.annotations) {
      w.item(in + 2);
      write_annotation(w, in + 4, a);
    }
  }
  if (!c.interactive_filters.empty()) {
    w.open(in, "interactive-filters");
    for (const auto& f : c.interactive_filters) {
      w.item(in + 2);
      write_interactive(w, in + 4, f);
    }
  }
}

}  // namespace

std::string serialize_snapshot(const SnapshotSpec& s) {
  Writer w;
  w.scalar(0, "spec-version", std::to_string(kSpecVersion));
  w.text(0, "id", s.id);
  w.text(0, "title", s.title);
  w.scalar(0, "version", std::to_string(s.version));
  w.open(0, "components");
  for (const auto& c : s.components) {
    w.item(2);
    write_component(w, 4, c);
  }
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, StackCuration>) {
          w.scalar(0, "curation", "stack");
        } else if constexpr (std::is_same_v<T, CarouselCuration>) {
          w.scalar(0, "curation", "carousel");
        } else if constexpr (std::is_same_v<T, SlideshowCuration>) {
          w.open(0, "curation");
          w.open(2, "slideshow");
          w.scalar(4, "interval", std::to_string(c.interval_seconds));
        } else {
          w.open(0, "curation");
          w.open(2, "mini-dashboard");
          w.scalar(4, "columns", std::to_string(c.columns));
        }
      },
      s.curation);
  w.scalar(0, "freshness", s.freshness.iso());
  if (s.completeness) {
    w.open(0, "completeness");
    if (s.completeness->complete) w.scalar(2, "complete", *s.completeness->complete ? "true" : "false");
    if (s.completeness->note) w.text(2, "note", *s.completeness->note);
    if (s.completeness->detect) w.scalar(2, "detect", std::string(unit_name(*s.completeness->detect)));
  }
  if (s.text_message) w.text(0, "text-message", *s.text_message);
  if (const auto* rule = s.recurrence()) {
    w.open(0, "update-policy");
    w.open(2, "auto-recur");
    w.scalar(4, "period", rule->period.str());
    w.scalar(4, "until", rule->until.iso());
    w.scalar(4, "publish-time", double_quoted(rule->publish_time.str()));
  } else if (std::holds_alternative<ManualViewerPolicy>(s.update_policy)) {
    w.scalar(0, "update-policy", "manual-viewer");
  } else {
    w.scalar(0, "update-policy", "manual-author");
  }
  w.scalar(0, "created-at", s.created_at.iso());
  if (!s.author.empty()) w.text(0, "author", s.author);
  return w.str();
}

std::string serialize_component(const ComponentSpec& c) {
  Writer w;
  w.scalar(0, "spec-version", std::to_string(kSpecVersion));
  write_component(w, 0, c);
  return w.str();
}

}  // namespace dashsnap::spec_io
