#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dashsnap/platform/workspace.hpp"

namespace dashsnap::service {

/// One replayed step: the API call it became and what came back.
struct StepResult {
  std::size_t index = 0;
  std::string kind;
  std::string method;
  std::string path;
  int status = 0;
  nlohmann::json response;
  bool ok = false;
};

struct ScenarioReport {
  std::string name;
  std::vector<StepResult> steps;
  /// Values captured with `as:` (message ids, snapshot versions).
  std::map<std::string, std::string> names;
  std::unique_ptr<platform::Workspace> workspace;
  double seconds = 0;

  bool ok() const;
  /// Every snapshot render found in the step responses, in order.
  std::vector<nlohmann::json> renders() const;
};

struct ScenarioOptions {
  /// Keep replaying after a step fails its expectation.
  bool keep_going = false;
};

/// Replays a scenario script through the HTTP API (without a socket).
///
///   name: ...
///   dashboard: dashboard.yaml        # or a list; relative to the script
///   start: 2022-04-04T09:00          # virtual clock start
///   steps:
///     - channel: {id: sales, name: Sales}
///     - component: {dashboard: ..., panel: ..., id: ...}
///     - snapshot: {id: ..., components: [<component ids or documents>], ...}
///     - publish: {snapshot: ..., channel: sales}
///       as: first-post
///     - filter: {message: $first-post, viewer: ben, component: ..., choice: {...}}
///     - advance: 1 month
///
/// Other step kinds: post, view, render, tick, update, refresh, react,
/// dissemination, and `call: {method, path, body, query}`. A step may carry
/// `expect-status`; otherwise any status below 400 passes. `$name` strings
/// are replaced by captured values.
/// Throws spec_io::ParseError for a malformed script, Error(Io).
ScenarioReport run_scenario(std::string_view script, const std::string& base_dir, const ScenarioOptions& options = {});
ScenarioReport run_scenario_file(const std::string& path, const ScenarioOptions& options = {});

}  // namespace dashsnap::service
