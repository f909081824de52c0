#include "dashsnap/spec_io/yaml_reader.hpp"

#include <algorithm>

#include "dashsnap/spec_io/yaml_scalar.hpp"

namespace dashsnap::spec_io {

SourceSpan span_of(const YAML::Node& node) {
  auto m = node.Mark();
  if (m.is_null()) return {0, 0};
  return {m.line + 1, m.column + 1};
}

YAML::Node load_document(std::string_view text) {
  std::vector<YAML::Node> docs;
  try {
    docs = YAML::LoadAll(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ParseError(Code::Syntax, e.msg, {e.mark.line + 1, e.mark.column + 1});
  } catch (const YAML::Exception& e) {
    throw ParseError(Code::Syntax, e.msg, {e.mark.line + 1, e.mark.column + 1});
  }
  if (docs.empty() || docs.front().IsNull()) {
    throw ParseError(Code::Syntax, "empty document", {1, 1});
  }
  if (docs.size() > 1) {
    throw ParseError(Code::Syntax, "multi-document streams are not supported", span_of(docs[1]));
  }
  return docs.front();
}

void fail(Code code, const YAML::Node& node, const std::string& message) {
  throw ParseError(code, message, span_of(node));
}

std::string child_path(const std::string& parent, std::string_view key) {
  return parent.empty() ? std::string(key) : parent + "." + std::string(key);
}

std::string item_path(const std::string& parent, std::size_t i) {
  return parent + "[" + std::to_string(i) + "]";
}

MapReader::MapReader(const YAML::Node& node, std::string path, ReadContext& ctx,
                     std::initializer_list<std::string_view> allowed)
    : node_(node), path_(std::move(path)), ctx_(ctx) {
  if (!node.IsMap()) {
    fail(Code::TypeMismatch, node, "expected a mapping at '" + (path_.empty() ? "<root>" : path_) + "'");
  }
  for (auto it = node.begin(); it != node.end(); ++it) {
    const YAML::Node& key = it->first;
    if (!key.IsScalar()) fail(Code::TypeMismatch, key, "mapping keys must be scalars");
    const std::string& k = key.Scalar();
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      fail(Code::UnknownKey, key, "unknown key '" + k + "' at '" + (path_.empty() ? "<root>" : path_) + "'");
    }
    if (entries_.count(k)) fail(Code::InvalidValue, key, "duplicate key '" + k + "'");
    ctx_.record(child_path(path_, k), key);
    entries_.emplace(k, it->second);
  }
}

bool MapReader::has(std::string_view key) const { return get(key).has_value(); }

std::optional<YAML::Node> MapReader::get(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.IsNull()) return std::nullopt;
  return it->second;
}

YAML::Node MapReader::require(std::string_view key) const {
  auto n = get(key);
  if (!n) {
    fail(Code::MissingField, node_,
         "missing required key '" + std::string(key) + "' at '" + (path_.empty() ? "<root>" : path_) + "'");
  }
  return *n;
}

std::string MapReader::path(std::string_view key) const { return child_path(path_, key); }

std::vector<YAML::Node> read_sequence(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  if (!node.IsSequence()) fail(Code::TypeMismatch, node, "expected a list at '" + path + "'");
  std::vector<YAML::Node> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    ctx.record(item_path(path, i), node[i]);
    out.push_back(node[i]);
  }
  return out;
}

namespace {

const std::string& scalar_text(const YAML::Node& node, const char* what) {
  if (!node.IsScalar()) fail(Code::TypeMismatch, node, std::string("expected ") + what);
  return node.Scalar();
}

}  // namespace

std::string read_text(const YAML::Node& node) { return scalar_text(node, "text"); }

std::string read_identifier(const YAML::Node& node) {
  const auto& s = scalar_text(node, "an identifier");
  if (s.empty()) fail(Code::InvalidValue, node, "identifier must not be empty");
  return s;
}

double read_number(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a number");
  auto v = classify_plain(s);
  if (auto* d = std::get_if<double>(&v)) return *d;
  fail(Code::TypeMismatch, node, "expected a number, got '" + s + "'");
}

int read_int(const YAML::Node& node) {
  double v = read_number(node);
  if (v != static_cast<double>(static_cast<int>(v))) fail(Code::TypeMismatch, node, "expected an integer");
  return static_cast<int>(v);
}

bool read_bool(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a boolean");
  if (s == "true") return true;
  if (s == "false") return false;
  fail(Code::TypeMismatch, node, "expected true or false, got '" + s + "'");
}

Date read_date(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a date");
  auto d = Date::parse(s);
  if (!d || s.size() != 10) fail(Code::TypeMismatch, node, "expected an ISO date (YYYY-MM-DD), got '" + s + "'");
  return *d;
}

Timestamp read_timestamp(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a timestamp");
  auto t = Timestamp::parse(s);
  if (!t) fail(Code::TypeMismatch, node, "expected an ISO timestamp, got '" + s + "'");
  return *t;
}

TimeOfDay read_time(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a time of day");
  auto t = TimeOfDay::parse(s);
  if (!t) fail(Code::TypeMismatch, node, "expected HH:MM, got '" + s + "'");
  return *t;
}

Duration read_duration(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a duration");
  auto d = Duration::parse(s);
  if (!d) fail(Code::DurationInvalid, node, "expected a duration like '1 month', got '" + s + "'");
  if (d->count < 1) fail(Code::DurationInvalid, node, "duration count must be >= 1");
  return *d;
}

DurationUnit read_unit(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a duration unit");
  auto u = unit_from_name(s);
  if (!u) fail(Code::TypeMismatch, node, "expected day, week, month, quarter or year, got '" + s + "'");
  return *u;
}

Scalar read_scalar(const YAML::Node& node) {
  const auto& s = scalar_text(node, "a scalar value");
  if (node.Tag() == "!") return s;
  return classify_plain(s);
}

Measure read_measure(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"name", "kind", "source-column", "aggregate", "expression", "unit"});
  Measure out;
  out.name = read_identifier(m.require("name"));
  auto kind_node = m.require("kind");
  auto kind = measure_kind_from(read_text(kind_node));
  if (!kind) fail(Code::InvalidValue, kind_node, "measure kind must be column, aggregated or computed");
  out.kind = *kind;
  if (auto n = m.get("source-column")) out.source_column = read_identifier(*n);
  if (auto n = m.get("aggregate")) {
    auto a = aggregate_from(read_text(*n));
    if (!a) fail(Code::InvalidValue, *n, "aggregate must be sum, avg, min, max or count");
    out.aggregate = *a;
  }
  if (auto n = m.get("expression")) out.expression = read_text(*n);
  if (auto n = m.get("unit")) out.unit = read_text(*n);
  return out;
}

Dimension read_dimension(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"name", "source-column", "kind"});
  Dimension out;
  out.name = read_identifier(m.require("name"));
  out.source_column = m.has("source-column") ? read_identifier(*m.get("source-column")) : out.name;
  auto kind_node = m.require("kind");
  auto kind = dimension_kind_from(read_text(kind_node));
  if (!kind) fail(Code::InvalidValue, kind_node, "dimension kind must be nominal or temporal");
  out.kind = *kind;
  return out;
}

DataFilter read_filter(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"column", "equals", "one-of", "range", "date-range"});
  DataFilter out;
  out.column = read_identifier(m.require("column"));
  int forms = m.has("equals") + m.has("one-of") + m.has("range") + m.has("date-range");
  if (forms != 1) {
    fail(Code::InvalidValue, node, "filter needs exactly one of equals, one-of, range, date-range");
  }
  if (auto n = m.get("equals")) {
    out.predicate = EqualsPredicate{read_scalar(*n)};
  } else if (auto n = m.get("one-of")) {
    OneOfPredicate p;
    for (const auto& item : read_sequence(*n, m.path("one-of"), ctx)) p.values.push_back(read_scalar(item));
    out.predicate = std::move(p);
  } else if (auto n = m.get("range")) {
    MapReader r(*n, m.path("range"), ctx, {"min", "max"});
    out.predicate = RangePredicate{read_number(r.require("min")), read_number(r.require("max"))};
  } else {
    auto dn = *m.get("date-range");
    MapReader r(dn, m.path("date-range"), ctx, {"start", "end"});
    out.predicate = DateRangePredicate{read_date(r.require("start")), read_date(r.require("end"))};
  }
  return out;
}

TimeFrame read_time_frame(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"field", "start", "duration"});
  TimeFrame tf;
  tf.field = read_identifier(m.require("field"));
  tf.start = read_date(m.require("start"));
  tf.duration = read_duration(m.require("duration"));
  return tf;
}

OriginalDesign read_design(const YAML::Node& node, const std::string& path, ReadContext& ctx) {
  MapReader m(node, path, ctx, {"mark", "encodings", "scales"});
  OriginalDesign d;
  auto mark_node = m.require("mark");
  auto mark = mark_from(read_text(mark_node));
  if (!mark) fail(Code::InvalidValue, mark_node, "mark must be bar, line, area, point or text-metric");
  d.mark = *mark;
  if (auto n = m.get("encodings")) {
    MapReader e(*n, m.path("encodings"), ctx, {"x", "y", "color"});
    for (auto ch : {"x", "y", "color"}) {
      if (auto f = e.get(ch)) d.encodings[ch] = read_identifier(*f);
    }
  }
  if (auto n = m.get("scales")) {
    d.scales = read_list<Scale>(*n, m.path("scales"), ctx,
                                [](const YAML::Node& sn, const std::string& sp, ReadContext& c) {
                                  MapReader s(sn, sp, c, {"field", "type", "domain", "range"});
                                  Scale sc;
                                  sc.field = read_identifier(s.require("field"));
                                  sc.type = s.has("type") ? read_text(*s.get("type")) : "linear";
                                  if (auto dn = s.get("domain")) {
                                    for (const auto& v : read_sequence(*dn, s.path("domain"), c)) {
                                      sc.domain.push_back(read_text(v));
                                    }
                                  }
                                  if (auto rn = s.get("range")) {
                                    for (const auto& v : read_sequence(*rn, s.path("range"), c)) {
                                      sc.range.push_back(read_text(v));
                                    }
                                  }
                                  return sc;
                                });
  }
  return d;
}

}  // namespace dashsnap::spec_io
