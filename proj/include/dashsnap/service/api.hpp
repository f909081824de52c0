#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dashsnap/core/error.hpp"
#include "dashsnap/platform/workspace.hpp"

namespace dashsnap::service {

struct ApiRequest {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Error body: {"error": {status, code, message, span, violations}}.
struct ApiError {
  int status = 500;
  std::string code;
  std::string message;
  std::optional<SourceSpan> span;
  ValidationReport report;

  nlohmann::json to_json() const;
};

/// 404 for unknown ids, 409 for recurrence/update conflicts, 400 for
/// unreadable bodies, 500 for store and I/O failures, 422 otherwise.
int http_status(Code code);

struct Route {
  std::string method;
  std::string pattern;  // "/api/snapshots/{id}/render"
  std::string summary;
};

struct ApiOptions {
  /// Store file rewritten after each successful mutation; none keeps the
  /// workspace in memory only.
  std::optional<std::string> store_path;
};

/// The HTTP+JSON surface over a workspace. Transport-free: the HTTP server
/// and the scenario runner both call handle().
class Api {
 public:
  explicit Api(platform::Workspace& workspace, ApiOptions options = {});

  /// Never throws; engine errors become error responses.
  ApiResponse handle(const ApiRequest& request);
  ApiResponse handle(const std::string& method, const std::string& path, const nlohmann::json& body = nullptr,
                     std::map<std::string, std::string> query = {});

  static const std::vector<Route>& routes();

  /// One scheduler pass at the workspace clock, serialized with mutating
  /// routes; used by the server's periodic tick.
  nlohmann::json tick();

  platform::Workspace& workspace() { return ws_; }

 private:
  using Params = std::map<std::string, std::string>;
  using Handler = std::function<ApiResponse(Api&, const Params&, const ApiRequest&)>;
  struct Entry {
    Route route;
    Handler handler;
    bool mutates = false;
  };
  static const std::vector<Entry>& table();

  ApiResponse list_dashboards(const Params&, const ApiRequest&);
  ApiResponse get_dashboard(const Params&, const ApiRequest&);
  ApiResponse get_panel(const Params&, const ApiRequest&);
  ApiResponse panel_templates(const Params&, const ApiRequest&);
  ApiResponse list_templates(const Params&, const ApiRequest&);
  ApiResponse create_component(const Params&, const ApiRequest&);
  ApiResponse component_templates(const Params&, const ApiRequest&);
  ApiResponse preview_component(const Params&, const ApiRequest&);
  ApiResponse infer_freshness(const Params&, const ApiRequest&);
  ApiResponse lint(const Params&, const ApiRequest&);
  ApiResponse compose(const Params&, const ApiRequest&);
  ApiResponse list_snapshots(const Params&, const ApiRequest&);
  ApiResponse get_snapshot(const Params&, const ApiRequest&);
  ApiResponse render_snapshot(const Params&, const ApiRequest&);
  ApiResponse snapshot_freshness(const Params&, const ApiRequest&);
  ApiResponse publish(const Params&, const ApiRequest&);
  ApiResponse update(const Params&, const ApiRequest&);
  ApiResponse refresh(const Params&, const ApiRequest&);
  ApiResponse dissemination(const Params&, const ApiRequest&);
  ApiResponse list_channels(const Params&, const ApiRequest&);
  ApiResponse create_channel(const Params&, const ApiRequest&);
  ApiResponse channel_messages(const Params&, const ApiRequest&);
  ApiResponse post_message(const Params&, const ApiRequest&);
  ApiResponse get_message(const Params&, const ApiRequest&);
  ApiResponse get_thread(const Params&, const ApiRequest&);
  ApiResponse react(const Params&, const ApiRequest&);
  ApiResponse get_viewer_filter(const Params&, const ApiRequest&);
  ApiResponse post_viewer_filter(const Params&, const ApiRequest&);
  ApiResponse get_clock(const Params&, const ApiRequest&);
  ApiResponse advance_clock(const Params&, const ApiRequest&);
  ApiResponse run_tick(const Params&, const ApiRequest&);
  ApiResponse list_routes(const Params&, const ApiRequest&);

  /// The draft or the latest published version.
  SnapshotSpec snapshot_spec(const std::string& id, std::optional<int> version = std::nullopt) const;
  void persist();
  nlohmann::json tick_unlocked();

  platform::Workspace& ws_;
  ApiOptions options_;
  /// Serializes mutating routes; reads run concurrently with each other.
  std::mutex write_mutex_;
  mutable std::mutex drafts_mutex_;
  std::map<std::string, SnapshotSpec> drafts_;
};

}  // namespace dashsnap::service
