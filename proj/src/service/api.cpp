#include "dashsnap/service/api.hpp"

#include <algorithm>
#include <sstream>

#include "dashsnap/core/freshness.hpp"
#include "dashsnap/lifecycle/create.hpp"
#include "dashsnap/lifecycle/materialize.hpp"
#include "dashsnap/service/json_spec.hpp"
#include "dashsnap/spec_io/spec_io.hpp"
#include "dashsnap/templates/applicability.hpp"

namespace dashsnap::service {

using nlohmann::json;
using spec_io::MapReader;
using spec_io::ReadContext;

namespace {

ApiResponse ok(json body, int status = 200) { return {status, std::move(body)}; }

ApiError api_error(int status, std::string code, std::string message) {
  ApiError e;
  e.status = status;
  e.code = std::move(code);
  e.message = std::move(message);
  return e;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '/')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::optional<std::map<std::string, std::string>> match(const std::string& pattern, const std::string& path) {
  auto want = split_path(pattern);
  auto got = split_path(path);
  if (want.size() != got.size()) return std::nullopt;
  std::map<std::string, std::string> params;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (want[i].size() > 2 && want[i].front() == '{' && want[i].back() == '}') {
      params[want[i].substr(1, want[i].size() - 2)] = got[i];
    } else if (want[i] != got[i]) {
      return std::nullopt;
    }
  }
  return params;
}

std::optional<int> query_int(const ApiRequest& r, const std::string& key) {
  auto it = r.query.find(key);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw api_error(400, "BAD_QUERY", "query parameter '" + key + "' must be an integer");
}

std::string query_text(const ApiRequest& r, const std::string& key, std::string fallback = {}) {
  auto it = r.query.find(key);
  return it == r.query.end() ? fallback : it->second;
}

ComponentSpec read_body_component(const YAML::Node& node, const std::string& path) {
  ReadContext ctx;
  return spec_io::read_component(node, path, ctx, path.empty());
}

json message_list(const std::vector<platform::Message>& messages) {
  json out = json::array();
  for (const auto& m : messages) out.push_back(platform::to_json(m));
  return out;
}

json version_list(const std::vector<lifecycle::StoredVersion>& history) {
  json out = json::array();
  for (const auto& v : history) {
    out.push_back(
        {{"version", v.spec.version}, {"superseded", v.superseded}, {"published-at", v.published_at.iso()}});
  }
  return out;
}

}  // namespace

json ApiError::to_json() const {
  json body{{"status", status}, {"code", code}, {"message", message}, {"span", span_json(span)}};
  body["violations"] = report_json(report)["violations"];
  return {{"error", body}};
}

int http_status(Code code) {
  switch (code) {
    case Code::UnknownSnapshot:
    case Code::UnknownChannel:
    case Code::UnknownThread:
    case Code::UnknownMessage:
    case Code::NotFound:
      return 404;
    case Code::RecurrenceExpired:
    case Code::NotAutoRecur:
      return 409;
    case Code::Syntax:
      return 400;
    case Code::StoreCorrupt:
    case Code::StoreVersion:
    case Code::Io:
      return 500;
    default:
      return 422;
  }
}

Api::Api(platform::Workspace& workspace, ApiOptions options) : ws_(workspace), options_(std::move(options)) {}

#define ROUTE(method, pattern, summary, fn, mutates) \
  Entry { Route{method, pattern, summary}, [](Api& a, const Params& p, const ApiRequest& r) { return a.fn(p, r); }, mutates }

const std::vector<Api::Entry>& Api::table() {
  static const std::vector<Entry> entries{
      ROUTE("GET", "/api/routes", "this table", list_routes, false),
      ROUTE("GET", "/api/dashboards", "dashboards with their panel ids", list_dashboards, false),
      ROUTE("GET", "/api/dashboards/{dashboard}", "one dashboard with full panel selections", get_dashboard, false),
      ROUTE("GET", "/api/dashboards/{dashboard}/panels/{panel}", "one panel selection", get_panel, false),
      ROUTE("GET", "/api/dashboards/{dashboard}/panels/{panel}/applicable-templates",
            "designs that fit the panel, with parameters still missing", panel_templates, false),
      ROUTE("GET", "/api/templates", "the template catalog", list_templates, false),
      ROUTE("POST", "/api/components", "create a component from a panel selection", create_component, false),
      ROUTE("POST", "/api/components/applicable-templates", "designs that fit a draft component",
            component_templates, false),
      ROUTE("POST", "/api/components/preview", "render a draft component now", preview_component, false),
      ROUTE("POST", "/api/freshness", "inferred best-before date for draft components", infer_freshness, false),
      ROUTE("POST", "/api/lint", "validate a spec document (YAML or JSON) with source spans", lint, false),
      ROUTE("GET", "/api/snapshots", "drafts and published snapshots", list_snapshots, false),
      ROUTE("POST", "/api/snapshots", "compose a snapshot draft", compose, true),
      ROUTE("GET", "/api/snapshots/{id}", "latest (or ?version=) spec and version history", get_snapshot, false),
      ROUTE("GET", "/api/snapshots/{id}/render", "materialize at the current clock (?version=, ?width=)",
            render_snapshot, false),
      ROUTE("GET", "/api/snapshots/{id}/freshness", "best-before date and staleness now", snapshot_freshness,
            false),
      ROUTE("POST", "/api/snapshots/{id}/publish", "post to a channel (first post stores version 1)", publish,
            true),
      ROUTE("POST", "/api/snapshots/{id}/update", "manual update by the author", update, true),
      ROUTE("POST", "/api/snapshots/{id}/refresh", "viewer-requested re-render of the latest version", refresh,
            true),
      ROUTE("GET", "/api/snapshots/{id}/dissemination", "where each version was posted", dissemination, false),
      ROUTE("GET", "/api/channels", "channels", list_channels, false),
      ROUTE("POST", "/api/channels", "create a channel", create_channel, true),
      ROUTE("GET", "/api/channels/{channel}/messages", "messages in posting order", channel_messages, false),
      ROUTE("POST", "/api/channels/{channel}/messages", "post a text message", post_message, true),
      ROUTE("GET", "/api/messages/{message}", "a message as one viewer sees it (?viewer=)", get_message, false),
      ROUTE("GET", "/api/messages/{message}/thread", "root and replies", get_thread, false),
      ROUTE("POST", "/api/messages/{message}/reactions", "add a reaction", react, true),
      ROUTE("GET", "/api/messages/{message}/viewer-filter", "a viewer's filter choices (?viewer=)",
            get_viewer_filter, false),
      ROUTE("POST", "/api/messages/{message}/viewer-filter", "apply or clear a viewer's filter choice",
            post_viewer_filter, true),
      ROUTE("GET", "/api/clock", "current time and clock mode", get_clock, false),
      ROUTE("POST", "/api/clock/advance", "move virtual time forward, then run the scheduler", advance_clock,
            true),
      ROUTE("POST", "/api/tick", "run the scheduler at the current time", run_tick, true),
  };
  return entries;
}

#undef ROUTE

const std::vector<Route>& Api::routes() {
  static const std::vector<Route> out = [] {
    std::vector<Route> r;
    for (const auto& e : table()) r.push_back(e.route);
    return r;
  }();
  return out;
}

ApiResponse Api::handle(const std::string& method, const std::string& path, const json& body,
                        std::map<std::string, std::string> query) {
  return handle(ApiRequest{method, path, std::move(query), body.is_null() ? std::string{} : body.dump()});
}

ApiResponse Api::handle(const ApiRequest& request) {
  bool path_known = false;
  try {
    for (const auto& e : table()) {
      auto params = match(e.route.pattern, request.path);
      if (!params) continue;
      path_known = true;
      if (e.route.method != request.method) continue;
      if (!e.mutates) return e.handler(*this, *params, request);
      std::lock_guard lock(write_mutex_);
      auto response = e.handler(*this, *params, request);
      if (response.status < 400) persist();
      return response;
    }
    if (path_known) throw api_error(405, "METHOD_NOT_ALLOWED", request.method + " is not allowed on " + request.path);
    throw api_error(404, "ROUTE_NOT_FOUND", "no route " + request.method + " " + request.path);
  } catch (const ApiError& e) {
    return {e.status, e.to_json()};
  } catch (const ValidationError& e) {
    ApiError err;
    err.status = 422;
    err.report = e.report();
    err.code = err.report.violations.empty() ? std::string(code_name(e.code()))
                                             : std::string(code_name(err.report.violations.front().code));
    err.message = err.report.violations.empty() ? e.what() : err.report.violations.front().message;
    try {
      attach_spans(err.report, body_spans(load_body(request.body)));
    } catch (const std::exception&) {
    }
    if (!err.report.violations.empty()) err.span = err.report.violations.front().span;
    return {err.status, err.to_json()};
  } catch (const Error& e) {
    ApiError err;
    err.status = http_status(e.code());
    err.code = std::string(code_name(e.code()));
    err.message = e.what();
    err.span = e.span();
    return {err.status, err.to_json()};
  } catch (const std::exception& e) {
    return {500, api_error(500, "INTERNAL", e.what()).to_json()};
  }
}

void Api::persist() {
  if (options_.store_path) ws_.save(*options_.store_path);
}

json Api::tick() {
  std::lock_guard lock(write_mutex_);
  auto out = tick_unlocked();
  if (!out["updates"].empty()) persist();
  return out;
}

json Api::tick_unlocked() {
  auto reports = ws_.platform().tick(ws_.registry(), ws_.clock());
  json updates = json::array();
  for (const auto& r : reports) updates.push_back(tick_json(r));
  return {{"now", ws_.now().iso()}, {"updates", updates}};
}

SnapshotSpec Api::snapshot_spec(const std::string& id, std::optional<int> version) const {
  const auto& store = ws_.platform().store();
  if (store.contains(id)) return version ? store.version(id, *version).spec : store.latest(id).spec;
  {
    std::lock_guard lock(drafts_mutex_);
    auto it = drafts_.find(id);
    if (it != drafts_.end()) {
      if (version && *version != 1) throw Error(Code::UnknownSnapshot, "draft '" + id + "' has only version 1");
      return it->second;
    }
  }
  throw Error(Code::UnknownSnapshot, "no snapshot '" + id + "'");
}

// ---------------------------------------------------------------------------
// dashboards and templates

ApiResponse Api::list_routes(const Params&, const ApiRequest&) {
  json out = json::array();
  for (const auto& r : routes()) out.push_back({{"method", r.method}, {"path", r.pattern}, {"summary", r.summary}});
  return ok(out);
}

ApiResponse Api::list_dashboards(const Params&, const ApiRequest&) {
  json out = json::array();
  for (const auto& d : ws_.dashboards()) {
    json panels = json::array();
    for (const auto& p : d.panels) panels.push_back(p.panel_id);
    out.push_back({{"id", d.id}, {"title", d.title}, {"panels", panels}});
  }
  return ok(out);
}

ApiResponse Api::get_dashboard(const Params& p, const ApiRequest&) {
  return ok(dashboard_json(ws_.dashboard(p.at("dashboard"))));
}

ApiResponse Api::get_panel(const Params& p, const ApiRequest&) {
  return ok(selection_json(ws_.panel(p.at("dashboard"), p.at("panel"))));
}

ApiResponse Api::panel_templates(const Params& p, const ApiRequest&) {
  auto sel = ws_.panel(p.at("dashboard"), p.at("panel"));
  auto data = ws_.registry().resolve(sel.data_source);
  return ok(applicable_json(templates::applicable_templates(ws_.catalog(), sel, data.get())));
}

ApiResponse Api::list_templates(const Params&, const ApiRequest&) {
  json out = json::array();
  for (const auto& d : ws_.catalog().designs()) out.push_back(design_json(d));
  return ok(out);
}

// ---------------------------------------------------------------------------
// components

ApiResponse Api::create_component(const Params&, const ApiRequest& r) {
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx,
              {"dashboard", "panel", "id", "time-frame", "appearance", "template", "caption", "custom-text",
               "annotations", "interactive-filters"});
  auto sel = ws_.panel(spec_io::read_identifier(m.require("dashboard")), spec_io::read_identifier(m.require("panel")));
  lifecycle::CreateOptions opts;
  opts.id = m.has("id") ? spec_io::read_identifier(*m.get("id")) : sel.panel_id;
  if (auto n = m.get("time-frame")) opts.imposed_time_frame = spec_io::read_time_frame(*n, "time-frame", ctx);
  if (auto n = m.get("appearance")) {
    auto a = appearance_from(spec_io::read_text(*n));
    if (!a) spec_io::fail(Code::InvalidValue, *n, "appearance must be visual, text or both");
    opts.appearance = *a;
  }
  if (auto n = m.get("template")) opts.template_binding = spec_io::read_template(*n, "template", ctx);
  if (auto n = m.get("caption")) opts.caption = spec_io::read_text(*n);
  if (auto n = m.get("custom-text")) opts.custom_text = spec_io::read_text(*n);
  if (auto n = m.get("annotations")) {
    opts.annotations = spec_io::read_list<Annotation>(*n, "annotations", ctx, spec_io::read_annotation);
  }
  if (auto n = m.get("interactive-filters")) {
    opts.interactive_filters =
        spec_io::read_list<InteractiveFilter>(*n, "interactive-filters", ctx, spec_io::read_interactive);
  }

  auto data = ws_.registry().resolve(sel.data_source);
  auto c = lifecycle::create_component(sel, opts, data.get(), ws_.catalog());
  coerce_scalars(c, ws_.registry());
  if (auto schema = ws_.registry().schema_of(c.data_source)) {
    auto report = validate_component(c, *schema);
    if (!report.ok()) throw ValidationError(report);
  }
  return ok({{"component", component_json(c)},
             {"applicable-templates", applicable_json(templates::applicable_templates(ws_.catalog(), c, data.get()))}},
            201);
}

ApiResponse Api::component_templates(const Params&, const ApiRequest& r) {
  auto c = read_body_component(load_body(r.body), "");
  auto data = ws_.registry().resolve(c.data_source);
  return ok(applicable_json(templates::applicable_templates(ws_.catalog(), c, data.get())));
}

ApiResponse Api::preview_component(const Params&, const ApiRequest& r) {
  auto c = read_body_component(load_body(r.body), "");
  coerce_scalars(c, ws_.registry());
  SnapshotSpec s;
  s.id = "preview";
  s.title = c.id;
  s.components = {c};
  s.freshness = dashsnap::infer_freshness(s.components);
  s.created_at = ws_.now();
  lifecycle::MaterializeOptions opts;
  opts.width = query_int(r, "width").value_or(templates::kChartWidth);
  opts.catalog = &ws_.catalog();
  auto render = lifecycle::materialize(s, ws_.registry(), ws_.clock(), opts);
  return ok({{"component", lifecycle::to_json(render)["components"][0]}, {"freshness", s.freshness.iso()}});
}

ApiResponse Api::infer_freshness(const Params&, const ApiRequest& r) {
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"components"});
  auto components = spec_io::read_list<ComponentSpec>(
      m.require("components"), "components", ctx,
      [](const YAML::Node& n, const std::string& p, ReadContext& c) { return spec_io::read_component(n, p, c); });
  if (components.empty()) throw Error(Code::NoComponents, "freshness needs at least one component");
  return ok({{"freshness", dashsnap::infer_freshness(components).iso()}});
}

ApiResponse Api::lint(const Params&, const ApiRequest& r) {
  templates::TemplateChecker checker(ws_.catalog());
  return ok(report_json(spec_io::lint(r.body, &ws_.registry(), &checker)));
}

// ---------------------------------------------------------------------------
// snapshots

ApiResponse Api::compose(const Params&, const ApiRequest& r) {
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx,
              {"id", "title", "author", "components", "curation", "update-policy", "freshness", "completeness",
               "text-message"});
  lifecycle::ComposeRequest req;
  req.id = spec_io::read_identifier(m.require("id"));
  req.title = m.has("title") ? spec_io::read_text(*m.get("title")) : req.id;
  if (auto n = m.get("author")) req.author = spec_io::read_identifier(*n);
  req.components = spec_io::read_list<ComponentSpec>(
      m.require("components"), "components", ctx,
      [](const YAML::Node& n, const std::string& p, ReadContext& c) { return spec_io::read_component(n, p, c); });
  for (auto& c : req.components) coerce_scalars(c, ws_.registry());
  req.curation = m.has("curation") ? spec_io::read_curation(*m.get("curation"), "curation", ctx)
                                   : Curation{StackCuration{}};
  req.update_policy = m.has("update-policy") ? spec_io::read_policy(*m.get("update-policy"), "update-policy", ctx)
                                             : UpdatePolicy{ManualAuthorPolicy{}};
  if (auto n = m.get("freshness")) req.overrides.freshness = spec_io::read_date(*n);
  if (auto n = m.get("completeness")) {
    req.overrides.completeness = spec_io::read_completeness(*n, "completeness", ctx);
  }
  if (auto n = m.get("text-message")) req.overrides.text_message = spec_io::read_text(*n);

  if (ws_.platform().store().contains(req.id)) {
    throw api_error(409, "ALREADY_PUBLISHED", "snapshot '" + req.id + "' is already published; use update");
  }
  auto spec = lifecycle::compose_snapshot(std::move(req), ws_.clock());
  templates::TemplateChecker checker(ws_.catalog());
  auto report = validate_snapshot(spec, ws_.registry(), &checker);
  if (!report.ok()) throw ValidationError(report);
  {
    std::lock_guard lock(drafts_mutex_);
    drafts_[spec.id] = spec;
  }
  return ok({{"snapshot", spec_json(spec)}, {"status", "draft"}}, 201);
}

ApiResponse Api::list_snapshots(const Params&, const ApiRequest&) {
  json out = json::array();
  {
    std::lock_guard lock(drafts_mutex_);
    for (const auto& [id, s] : drafts_) {
      out.push_back({{"id", id}, {"title", s.title}, {"status", "draft"}, {"version", s.version}});
    }
  }
  const auto& store = ws_.platform().store();
  for (const auto& id : store.ids()) {
    auto latest = store.latest(id).spec;
    out.push_back({{"id", id}, {"title", latest.title}, {"status", "published"}, {"version", latest.version}});
  }
  return ok(out);
}

ApiResponse Api::get_snapshot(const Params& p, const ApiRequest& r) {
  const auto& id = p.at("id");
  auto spec = snapshot_spec(id, query_int(r, "version"));
  const auto& store = ws_.platform().store();
  bool published = store.contains(id);
  return ok({{"snapshot", spec_json(spec)},
             {"status", published ? "published" : "draft"},
             {"versions", published ? version_list(store.history(id)) : json::array()}});
}

ApiResponse Api::render_snapshot(const Params& p, const ApiRequest& r) {
  auto spec = snapshot_spec(p.at("id"), query_int(r, "version"));
  lifecycle::MaterializeOptions opts;
  opts.width = query_int(r, "width").value_or(templates::kChartWidth);
  opts.catalog = &ws_.catalog();
  return ok(lifecycle::to_json(lifecycle::materialize(spec, ws_.registry(), ws_.clock(), opts)));
}

ApiResponse Api::snapshot_freshness(const Params& p, const ApiRequest& r) {
  auto spec = snapshot_spec(p.at("id"), query_int(r, "version"));
  return ok({{"freshness", spec.freshness.iso()},
             {"inferred", dashsnap::infer_freshness(spec.components).iso()},
             {"stale", lifecycle::is_stale(spec, ws_.clock())},
             {"now", ws_.now().iso()}});
}

ApiResponse Api::publish(const Params& p, const ApiRequest& r) {
  const auto& id = p.at("id");
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"channel", "thread", "author"});
  auto channel = spec_io::read_identifier(m.require("channel"));
  auto thread = body_optional_text(body, "thread");
  auto& platform = ws_.platform();
  platform::Message msg;
  if (platform.store().contains(id)) {
    auto latest = platform.store().latest(id).spec;
    auto author = body_optional_text(body, "author").value_or(latest.author);
    msg = platform.repost({id, latest.version}, channel, thread, author, ws_.registry(), ws_.clock());
  } else {
    SnapshotSpec draft;
    {
      std::lock_guard lock(drafts_mutex_);
      auto it = drafts_.find(id);
      if (it == drafts_.end()) throw Error(Code::UnknownSnapshot, "no snapshot '" + id + "'");
      draft = it->second;
    }
    if (auto author = body_optional_text(body, "author")) draft.author = *author;
    msg = platform.publish(draft, channel, thread, ws_.registry(), ws_.clock());
    std::lock_guard lock(drafts_mutex_);
    drafts_.erase(id);
  }
  return ok({{"message", platform::to_json(msg)}, {"render", lifecycle::to_json(platform.stored_render(msg.id))}},
            201);
}

ApiResponse Api::update(const Params& p, const ApiRequest& r) {
  auto edits = read_edits(load_body(r.body));
  auto replies = ws_.platform().update_manual(p.at("id"), edits, ws_.registry(), ws_.clock());
  auto version = ws_.platform().store().latest(p.at("id")).spec.version;
  return ok({{"version", version}, {"messages", message_list(replies)}}, 201);
}

ApiResponse Api::refresh(const Params& p, const ApiRequest& r) {
  auto body = load_body(r.body);
  auto viewer = body_text(body, "viewer");
  auto replies = ws_.platform().refresh(p.at("id"), viewer, ws_.registry(), ws_.clock());
  return ok({{"messages", message_list(replies)}}, 201);
}

ApiResponse Api::dissemination(const Params& p, const ApiRequest&) {
  const auto& id = p.at("id");
  if (!ws_.platform().store().contains(id)) throw Error(Code::UnknownSnapshot, "snapshot '" + id + "' is not published");
  return ok({{"snapshot-id", id}, {"entries", dissemination_json(ws_.platform().dissemination(id))}});
}

// ---------------------------------------------------------------------------
// channels and messages

ApiResponse Api::list_channels(const Params&, const ApiRequest&) {
  json out = json::array();
  for (const auto& c : ws_.platform().channels()) {
    out.push_back({{"id", c.id}, {"name", c.name}, {"members", c.members}});
  }
  return ok(out);
}

ApiResponse Api::create_channel(const Params&, const ApiRequest& r) {
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"id", "name", "members"});
  auto id = spec_io::read_identifier(m.require("id"));
  auto name = m.has("name") ? spec_io::read_text(*m.get("name")) : id;
  std::vector<std::string> members;
  if (auto n = m.get("members")) {
    members = spec_io::read_list<std::string>(*n, "members", ctx,
                                              [](const YAML::Node& item, const std::string&, ReadContext&) {
                                                return spec_io::read_identifier(item);
                                              });
  }
  for (const auto& c : ws_.platform().channels()) {
    if (c.id == id) throw api_error(409, "ALREADY_EXISTS", "channel '" + id + "' already exists");
  }
  auto c = ws_.platform().create_channel(id, name, members);
  return ok({{"id", c.id}, {"name", c.name}, {"members", c.members}}, 201);
}

ApiResponse Api::channel_messages(const Params& p, const ApiRequest&) {
  return ok(message_list(ws_.platform().channel_messages(p.at("channel"))));
}

ApiResponse Api::post_message(const Params& p, const ApiRequest& r) {
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"author", "text", "thread"});
  auto msg = ws_.platform().post_text(p.at("channel"), body_optional_text(body, "thread"),
                                      spec_io::read_identifier(m.require("author")),
                                      spec_io::read_text(m.require("text")), ws_.clock());
  return ok(platform::to_json(msg), 201);
}

ApiResponse Api::get_message(const Params& p, const ApiRequest& r) {
  auto view = ws_.platform().view_message(p.at("message"), query_text(r, "viewer"), ws_.registry(), ws_.clock());
  return ok(platform::to_json(view));
}

ApiResponse Api::get_thread(const Params& p, const ApiRequest&) {
  return ok(message_list(ws_.platform().thread(p.at("message"))));
}

ApiResponse Api::react(const Params& p, const ApiRequest& r) {
  auto body = load_body(r.body);
  ws_.platform().react(p.at("message"), body_text(body, "emoji"));
  return ok(platform::to_json(ws_.platform().message(p.at("message"))));
}

ApiResponse Api::get_viewer_filter(const Params& p, const ApiRequest& r) {
  auto viewer = query_text(r, "viewer");
  ws_.platform().message(p.at("message"));
  return ok({{"viewer", viewer}, {"state", choices_json(ws_.platform().viewer_state(p.at("message"), viewer))}});
}

ApiResponse Api::post_viewer_filter(const Params& p, const ApiRequest& r) {
  const auto& message = p.at("message");
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"viewer", "component", "choice", "clear"});
  auto viewer = spec_io::read_identifier(m.require("viewer"));
  auto component = spec_io::read_identifier(m.require("component"));
  platform::ComponentChoices state;
  if (auto n = m.get("choice")) {
    if (m.has("clear")) spec_io::fail(Code::InvalidValue, *m.get("clear"), "give either choice or clear");
    state = ws_.platform().apply_filter(message, component, viewer, read_choice(*n));
  } else if (auto c = m.get("clear")) {
    std::optional<std::string> key;
    if (c->IsScalar() && c->Scalar() != "true") key = c->Scalar();
    state = ws_.platform().clear_filter(message, component, viewer, key);
  } else {
    spec_io::fail(Code::MissingField, body, "give a choice or clear");
  }
  auto view = ws_.platform().view_message(message, viewer, ws_.registry(), ws_.clock());
  return ok({{"viewer", viewer}, {"state", choices_json(state)}, {"view", platform::to_json(view)}});
}

// ---------------------------------------------------------------------------
// clock

ApiResponse Api::get_clock(const Params&, const ApiRequest&) {
  bool is_virtual = ws_.clock_mode() == platform::ClockMode::Virtual;
  return ok({{"now", ws_.now().iso()}, {"mode", is_virtual ? "virtual" : "wall"}});
}

ApiResponse Api::advance_clock(const Params&, const ApiRequest& r) {
  if (ws_.clock_mode() != platform::ClockMode::Virtual) {
    throw api_error(409, "CLOCK_NOT_VIRTUAL", "the clock can only be moved in virtual (test) mode");
  }
  auto body = load_body(r.body);
  ReadContext ctx;
  MapReader m(body, "", ctx, {"by", "to"});
  if (auto n = m.get("by")) {
    ws_.advance(spec_io::read_duration(*n));
  } else if (auto t = m.get("to")) {
    ws_.set_now(spec_io::read_timestamp(*t));
  } else {
    spec_io::fail(Code::MissingField, body, "give 'by' (a duration) or 'to' (a timestamp)");
  }
  return ok(tick_unlocked());
}

ApiResponse Api::run_tick(const Params&, const ApiRequest&) { return ok(tick_unlocked()); }

}  // namespace dashsnap::service
