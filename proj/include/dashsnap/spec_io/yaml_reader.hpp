#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "dashsnap/core/calendar.hpp"
#include "dashsnap/core/error.hpp"
#include "dashsnap/core/model.hpp"

namespace dashsnap::spec_io {

/// Parse failure positioned in the source text.
class ParseError : public Error {
 public:
  ParseError(Code code, const std::string& message, SourceSpan span)
      : Error(code, message, span) {}
  int line() const { return span()->line; }
  int column() const { return span()->column; }
};

SourceSpan span_of(const YAML::Node& node);

/// Loads one YAML document, translating yaml-cpp failures into ParseError.
/// Anchors, aliases and multi-document streams are rejected.
YAML::Node load_document(std::string_view text);

/// Tracks the surface path of every node visited so validation findings can
/// be mapped back to source positions.
class ReadContext {
 public:
  void record(const std::string& path, const YAML::Node& node) { spans_[path] = span_of(node); }
  std::map<std::string, SourceSpan>& spans() { return spans_; }

 private:
  std::map<std::string, SourceSpan> spans_;
};

[[noreturn]] void fail(Code code, const YAML::Node& node, const std::string& message);

/// Strict mapping access: unknown and duplicate keys are errors.
class MapReader {
 public:
  MapReader(const YAML::Node& node, std::string path, ReadContext& ctx,
            std::initializer_list<std::string_view> allowed);

  bool has(std::string_view key) const;
  std::optional<YAML::Node> get(std::string_view key) const;
  YAML::Node require(std::string_view key) const;
  std::string path(std::string_view key) const;
  const std::string& path() const { return path_; }
  const YAML::Node& node() const { return node_; }
  ReadContext& ctx() const { return ctx_; }

 private:
  YAML::Node node_;
  std::string path_;
  ReadContext& ctx_;
  std::map<std::string, YAML::Node, std::less<>> entries_;
};

std::string child_path(const std::string& parent, std::string_view key);
std::string item_path(const std::string& parent, std::size_t i);

std::vector<YAML::Node> read_sequence(const YAML::Node& node, const std::string& path, ReadContext& ctx);

std::string read_text(const YAML::Node& node);
std::string read_identifier(const YAML::Node& node);
double read_number(const YAML::Node& node);
int read_int(const YAML::Node& node);
bool read_bool(const YAML::Node& node);
Date read_date(const YAML::Node& node);
Timestamp read_timestamp(const YAML::Node& node);
TimeOfDay read_time(const YAML::Node& node);
Duration read_duration(const YAML::Node& node);
DurationUnit read_unit(const YAML::Node& node);
/// Quoted scalars are strings; plain scalars are numbers or dates when they
/// read as such, strings otherwise.
Scalar read_scalar(const YAML::Node& node);

// Shared readers for model fragments used by specs, dashboard descriptors
// and template catalogs.
Measure read_measure(const YAML::Node& node, const std::string& path, ReadContext& ctx);
Dimension read_dimension(const YAML::Node& node, const std::string& path, ReadContext& ctx);
DataFilter read_filter(const YAML::Node& node, const std::string& path, ReadContext& ctx);
TimeFrame read_time_frame(const YAML::Node& node, const std::string& path, ReadContext& ctx);
OriginalDesign read_design(const YAML::Node& node, const std::string& path, ReadContext& ctx);
Annotation read_annotation(const YAML::Node& node, const std::string& path, ReadContext& ctx);
InteractiveFilter read_interactive(const YAML::Node& node, const std::string& path, ReadContext& ctx);
TemplateBinding read_template(const YAML::Node& node, const std::string& path, ReadContext& ctx);
/// `top_level` allows a spec-version key.
ComponentSpec read_component(const YAML::Node& node, const std::string& path, ReadContext& ctx,
                             bool top_level = false);
Curation read_curation(const YAML::Node& node, const std::string& path, ReadContext& ctx);
UpdatePolicy read_policy(const YAML::Node& node, const std::string& path, ReadContext& ctx);
Completeness read_completeness(const YAML::Node& node, const std::string& path, ReadContext& ctx);

template <typename T, typename F>
std::vector<T> read_list(const YAML::Node& node, const std::string& path, ReadContext& ctx, F&& item) {
  std::vector<T> out;
  auto items = read_sequence(node, path, ctx);
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.push_back(item(items[i], item_path(path, i), ctx));
  }
  return out;
}

}  // namespace dashsnap::spec_io
