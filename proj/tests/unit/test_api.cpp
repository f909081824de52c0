#include <doctest.h>

#include <httplib.h>

#include <algorithm>
#include <filesystem>
#include <set>

#include "dashsnap/service/api.hpp"
#include "dashsnap/service/http_server.hpp"
#include "support/fixtures.hpp"

using namespace dashsnap;
using namespace dashsnap::service;
using namespace dashsnap::testing;
using nlohmann::json;

namespace {

std::unique_ptr<platform::Workspace> sample_workspace(const char* start = "2022-04-04T09:00") {
  auto ws = std::make_unique<platform::Workspace>(platform::ClockMode::Virtual, Timestamp::from_iso(start));
  ws->add_dashboard(source_path("data/sample/dashboard.yaml"));
  return ws;
}

json sales_component_body() {
  return {{"dashboard", "superstore"}, {"panel", "sales-by-category"}, {"id", "sales"}, {"appearance", "both"}};
}

json compose_body(const json& component, const std::string& until = "2022-12-31") {
  return {{"id", "monthly"},
          {"title", "Monthly"},
          {"author", "ana"},
          {"components", json::array({component})},
          {"update-policy", {{"auto-recur", {{"period", "1 month"}, {"until", until}, {"publish-time", "09:00"}}}}}};
}

std::string error_code(const ApiResponse& r) { return r.body.at("error").at("code").get<std::string>(); }

std::vector<std::string> design_ids(const json& list) {
  std::vector<std::string> out;
  for (const auto& a : list) out.push_back(a.contains("design") ? a["design"].get<std::string>() : a.at("id").get<std::string>());
  return out;
}

// Creates the sales component, composes and publishes it to #sales.
// Returns the posted message id.
std::string publish_sales(Api& api) {
  api.handle("POST", "/api/channels", {{"id", "sales"}, {"members", {"ana", "ben"}}});
  auto c = api.handle("POST", "/api/components", sales_component_body());
  REQUIRE(c.status == 201);
  auto s = api.handle("POST", "/api/snapshots", compose_body(c.body["component"]));
  REQUIRE(s.status == 201);
  auto p = api.handle("POST", "/api/snapshots/monthly/publish", {{"channel", "sales"}});
  REQUIRE(p.status == 201);
  return p.body["message"]["id"].get<std::string>();
}

bool has_node_role(const json& node, const std::string& role) {
  if (node.value("role", "") == role) return true;
  if (!node.contains("children")) return false;
  return std::any_of(node["children"].begin(), node["children"].end(),
                     [&](const json& c) { return has_node_role(c, role); });
}

}  // namespace

TEST_CASE("route table lists every route the authoring client uses") {
  std::set<std::string> have;
  for (const auto& r : Api::routes()) have.insert(r.method + " " + r.pattern);
  for (const char* want : {"GET /api/dashboards", "GET /api/dashboards/{dashboard}",
                           "GET /api/dashboards/{dashboard}/panels/{panel}",
                           "GET /api/dashboards/{dashboard}/panels/{panel}/applicable-templates",
                           "GET /api/templates", "POST /api/components", "POST /api/components/applicable-templates",
                           "POST /api/components/preview", "POST /api/freshness", "POST /api/lint",
                           "GET /api/snapshots", "POST /api/snapshots", "GET /api/snapshots/{id}",
                           "GET /api/snapshots/{id}/render", "GET /api/snapshots/{id}/freshness",
                           "POST /api/snapshots/{id}/publish", "POST /api/snapshots/{id}/update",
                           "POST /api/snapshots/{id}/refresh", "GET /api/snapshots/{id}/dissemination",
                           "GET /api/channels", "POST /api/channels", "GET /api/channels/{channel}/messages",
                           "POST /api/channels/{channel}/messages", "GET /api/messages/{message}",
                           "GET /api/messages/{message}/thread", "POST /api/messages/{message}/reactions",
                           "GET /api/messages/{message}/viewer-filter", "POST /api/messages/{message}/viewer-filter",
                           "GET /api/clock", "POST /api/clock/advance", "POST /api/tick"}) {
    CHECK_MESSAGE(have.count(want), want);
  }
  auto ws = sample_workspace();
  Api api(*ws);
  auto r = api.handle("GET", "/api/routes");
  CHECK(r.status == 200);
  CHECK(r.body.size() == Api::routes().size());
}

TEST_CASE("dashboards, panels and the catalog") {
  auto ws = sample_workspace();
  Api api(*ws);

  auto list = api.handle("GET", "/api/dashboards");
  REQUIRE(list.status == 200);
  REQUIRE(list.body.size() == 1);
  CHECK(list.body[0]["id"] == "superstore");
  CHECK(list.body[0]["panels"].size() == 5);

  auto d = api.handle("GET", "/api/dashboards/superstore");
  CHECK(d.status == 200);
  CHECK(d.body["panels"].size() == 5);

  auto p = api.handle("GET", "/api/dashboards/superstore/panels/sales-by-category");
  CHECK(p.status == 200);
  CHECK(p.body["measures"][0]["name"] == "Sales");

  auto missing = api.handle("GET", "/api/dashboards/superstore/panels/nope");
  CHECK(missing.status == 404);
  CHECK(error_code(missing) == "NOT_FOUND");
  CHECK(api.handle("GET", "/api/dashboards/nope").status == 404);

  auto templates = api.handle("GET", "/api/templates");
  CHECK(templates.status == 200);
  CHECK(design_ids(templates.body) ==
        std::vector<std::string>{"simple-breakdown", "breakdown-with-goal", "time-series-with-threshold"});
}

TEST_CASE("applicable templates for panels and draft components") {
  auto ws = sample_workspace();
  Api api(*ws);

  auto sales = api.handle("GET", "/api/dashboards/superstore/panels/sales-by-category/applicable-templates");
  REQUIRE(sales.status == 200);
  CHECK(design_ids(sales.body) == std::vector<std::string>{"simple-breakdown", "breakdown-with-goal"});
  for (const auto& a : sales.body) {
    if (a["design"] == "breakdown-with-goal") CHECK(a["missing"] == json::array({"goal"}));
    if (a["design"] == "simple-breakdown") CHECK(a["missing"].empty());
  }

  auto daily = api.handle("GET", "/api/dashboards/superstore/panels/daily-sales/applicable-templates");
  CHECK(design_ids(daily.body) == std::vector<std::string>{"time-series-with-threshold"});

  auto total = api.handle("GET", "/api/dashboards/superstore/panels/total-sales/applicable-templates");
  CHECK(total.body.empty());

  auto created = api.handle("POST", "/api/components", sales_component_body());
  REQUIRE(created.status == 201);
  CHECK(design_ids(created.body["applicable-templates"]) == design_ids(sales.body));
  auto again = api.handle("POST", "/api/components/applicable-templates", created.body["component"]);
  CHECK(again.status == 200);
  CHECK(design_ids(again.body) == design_ids(sales.body));
}

TEST_CASE("component creation, preview and freshness inference") {
  auto ws = sample_workspace();
  Api api(*ws);

  auto created = api.handle("POST", "/api/components", sales_component_body());
  REQUIRE(created.status == 201);
  const auto& c = created.body["component"];
  CHECK(c["id"] == "sales");
  CHECK(c["time-frame"]["start"] == "2022-03-02");
  CHECK(c["time-frame"]["duration"] == "1 month");
  CHECK(c["time-frame"]["field"] == "Order Date");

  auto fresh = api.handle("POST", "/api/freshness", {{"components", json::array({c})}});
  CHECK(fresh.status == 200);
  CHECK(fresh.body["freshness"] == "2022-05-02");

  auto preview = api.handle("POST", "/api/components/preview", c, {{"width", "320"}});
  REQUIRE(preview.status == 200);
  CHECK(preview.body["component"]["id"] == "sales");
  CHECK(preview.body["component"]["transparency"]["time-frame"].get<std::string>().find("2022-03-02") !=
        std::string::npos);
  CHECK(api.handle("POST", "/api/components/preview", c, {{"width", "wide"}}).status == 400);

  // The bar-chart component needs a time frame from somewhere.
  auto no_frame = api.handle("POST", "/api/components",
                             {{"dashboard", "superstore"}, {"panel", "quantity-by-segment"}});
  CHECK(no_frame.status == 422);
  CHECK(error_code(no_frame) == "NO_TIME_FRAME");
  auto imposed = api.handle("POST", "/api/components",
                            {{"dashboard", "superstore"},
                             {"panel", "quantity-by-segment"},
                             {"time-frame", {{"field", "Order Date"}, {"start", "2022-01-01"}, {"duration", "1 quarter"}}}});
  CHECK(imposed.status == 201);

  auto bad_template = api.handle("POST", "/api/components",
                                 {{"dashboard", "superstore"},
                                  {"panel", "total-sales"},
                                  {"time-frame", {{"field", "Order Date"}, {"start", "2022-01-01"}, {"duration", "1 month"}}},
                                  {"template", {{"design", "simple-breakdown"}}}});
  CHECK(bad_template.status == 422);
  CHECK(error_code(bad_template) == "TEMPLATE_INAPPLICABLE");

  auto unknown_key = api.handle("POST", "/api/components", {{"dashboard", "superstore"}, {"pannel", "x"}});
  CHECK(unknown_key.status == 422);
  CHECK(error_code(unknown_key) == "UNKNOWN_KEY");
}

TEST_CASE("validation errors carry spans into the request body") {
  auto ws = sample_workspace();
  Api api(*ws);
  auto c = api.handle("POST", "/api/components", sales_component_body()).body["component"];

  // Pretty-printed so every key sits on its own line.
  auto body = compose_body(c, "2022-01-01").dump(2);
  auto r = api.handle(ApiRequest{"POST", "/api/snapshots", {}, body});
  REQUIRE(r.status == 422);
  CHECK(error_code(r) == "RECURRENCE_HORIZON_INVALID");
  const auto& err = r.body["error"];
  REQUIRE(err["violations"].size() >= 1);
  CHECK(err["violations"][0]["path"] == "update-policy.auto-recur.until");
  REQUIRE(err["span"].is_object());
  // Span lines are 1-based; find the line holding "until" in the body.
  int line = 1;
  auto pos = body.find("\"until\"");
  for (std::size_t i = 0; i < pos; ++i) line += body[i] == '\n';
  CHECK(err["span"]["line"] == line);

  auto syntax = api.handle(ApiRequest{"POST", "/api/snapshots", {}, "{\"id\": "});
  CHECK(syntax.status == 400);
  CHECK(error_code(syntax) == "SYNTAX");
  CHECK(syntax.body["error"]["span"].is_object());

  auto not_map = api.handle(ApiRequest{"POST", "/api/snapshots", {}, "[1, 2]"});
  CHECK(not_map.status == 422);
}

TEST_CASE("lint reports violations with spans") {
  auto ws = sample_workspace();
  Api api(*ws);
  auto bad = api.handle(ApiRequest{"POST", "/api/lint", {}, "spec-version: 1\nid: x\nbogus: 1\n"});
  REQUIRE(bad.status == 200);
  CHECK(bad.body["ok"] == false);
  REQUIRE(!bad.body["violations"].empty());
  bool unknown = false;
  for (const auto& v : bad.body["violations"]) {
    if (v["code"] == "UNKNOWN_KEY") {
      unknown = true;
      CHECK(v["span"]["line"] == 3);
    }
  }
  CHECK(unknown);
}

TEST_CASE("snapshot lifecycle over HTTP-shaped calls") {
  auto ws = sample_workspace();
  Api api(*ws);
  auto root = publish_sales(api);

  auto list = api.handle("GET", "/api/snapshots");
  REQUIRE(list.body.size() == 1);
  CHECK(list.body[0]["status"] == "published");

  auto again = api.handle("POST", "/api/snapshots",
                          compose_body(api.handle("POST", "/api/components", sales_component_body()).body["component"]));
  CHECK(again.status == 409);
  CHECK(error_code(again) == "ALREADY_PUBLISHED");

  auto got = api.handle("GET", "/api/snapshots/monthly");
  CHECK(got.body["status"] == "published");
  CHECK(got.body["versions"].size() == 1);
  CHECK(api.handle("GET", "/api/snapshots/nope").status == 404);
  CHECK(api.handle("GET", "/api/snapshots/monthly", nullptr, {{"version", "7"}}).status == 404);

  auto fresh = api.handle("GET", "/api/snapshots/monthly/freshness");
  CHECK(fresh.body["freshness"] == "2022-05-02");
  CHECK(fresh.body["stale"] == false);

  // One month on from 04-04: due 05-04 09:00, stale since 05-03.
  auto adv = api.handle("POST", "/api/clock/advance", {{"by", "1 month"}});
  REQUIRE(adv.status == 200);
  CHECK(adv.body["now"] == "2022-05-04T09:00:00");
  REQUIRE(adv.body["updates"].size() == 1);
  CHECK(adv.body["updates"][0]["version"] == 2);
  REQUIRE(adv.body["updates"][0]["messages"].size() == 1);
  auto reply = adv.body["updates"][0]["messages"][0].get<std::string>();
  CHECK(api.handle("GET", "/api/messages/" + reply).body["message"]["thread-root"] == root);

  auto v1 = api.handle("GET", "/api/messages/" + root);
  CHECK(v1.body["superseded-by"] == 2);
  auto v1_render = api.handle("GET", "/api/snapshots/monthly/render", nullptr, {{"version", "1"}});
  CHECK(v1_render.body["freshness"]["stale"] == true);
  CHECK(has_node_role(v1_render.body["layout"], "stale"));
  auto v2_render = api.handle("GET", "/api/snapshots/monthly/render");
  CHECK(v2_render.body["version"] == 2);
  CHECK(v2_render.body["freshness"]["stale"] == false);
  CHECK(v2_render.body["freshness"]["fresh-until"] == "2022-06-02");
  CHECK(has_node_role(v2_render.body["layout"], "fresh"));

  auto tick = api.handle("POST", "/api/tick");
  CHECK(tick.body["updates"].empty());

  auto upd = api.handle("POST", "/api/snapshots/monthly/update",
                        {{"author", "ana"}, {"text-message", "Corrected figures"}});
  REQUIRE(upd.status == 201);
  CHECK(upd.body["version"] == 3);
  CHECK(upd.body["messages"].size() == 1);

  auto refresh = api.handle("POST", "/api/snapshots/monthly/refresh", {{"viewer", "ben"}});
  CHECK(refresh.status == 201);
  CHECK(refresh.body["messages"][0]["author"] == "ben");

  auto thread = api.handle("GET", "/api/messages/" + root + "/thread");
  CHECK(thread.body.size() == 4);

  auto dis = api.handle("GET", "/api/snapshots/monthly/dissemination");
  CHECK(dis.body["entries"].size() == 4);
}

TEST_CASE("channels, messages and reactions") {
  auto ws = sample_workspace();
  Api api(*ws);
  CHECK(api.handle("POST", "/api/channels", {{"id", "sales"}}).status == 201);
  auto dup = api.handle("POST", "/api/channels", {{"id", "sales"}});
  CHECK(dup.status == 409);
  CHECK(error_code(dup) == "ALREADY_EXISTS");
  CHECK(api.handle("GET", "/api/channels").body.size() == 1);

  auto m = api.handle("POST", "/api/channels/sales/messages", {{"author", "ana"}, {"text", "hello"}});
  REQUIRE(m.status == 201);
  auto id = m.body["id"].get<std::string>();
  auto reply = api.handle("POST", "/api/channels/sales/messages", {{"author", "ben"}, {"text", "hi"}, {"thread", id}});
  CHECK(reply.body["thread-root"] == id);
  CHECK(api.handle("POST", "/api/channels/nope/messages", {{"author", "a"}, {"text", "x"}}).status == 404);
  CHECK(api.handle("POST", "/api/channels/sales/messages", {{"author", "a"}, {"text", "x"}, {"thread", "m99"}})
            .status == 404);

  auto r = api.handle("POST", "/api/messages/" + id + "/reactions", {{"emoji", "tada"}});
  CHECK(r.status == 200);
  CHECK(r.body["reactions"]["tada"] == 1);
  CHECK(api.handle("GET", "/api/channels/sales/messages").body.size() == 2);
  CHECK(api.handle("GET", "/api/messages/m99").status == 404);
}

TEST_CASE("per-viewer filters through the API") {
  auto ws = sample_workspace();
  Api api(*ws);
  api.handle("POST", "/api/channels", {{"id", "sales"}});
  auto body = sales_component_body();
  body["panel"] = "profit-ratio-by-region";
  body["id"] = "ratio";
  body["interactive-filters"] = json::array({{{"dropdown", {{"column", "Category"}, {"values", {"Furniture", "Technology"}}}}}});
  auto c = api.handle("POST", "/api/components", body);
  REQUIRE(c.status == 201);
  REQUIRE(api.handle("POST", "/api/snapshots", compose_body(c.body["component"])).status == 201);
  auto root = api.handle("POST", "/api/snapshots/monthly/publish", {{"channel", "sales"}}).body["message"]["id"]
                  .get<std::string>();

  auto before = api.handle("GET", "/api/messages/" + root, nullptr, {{"viewer", "cy"}});
  auto f = api.handle("POST", "/api/messages/" + root + "/viewer-filter",
                      {{"viewer", "ben"},
                       {"component", "ratio"},
                       {"choice", {{"kind", "dropdown"}, {"column", "Category"}, {"values", {"Furniture"}}}}});
  REQUIRE(f.status == 200);
  CHECK(f.body["state"].size() == 1);
  CHECK(f.body["view"]["filtered-components"] == json::array({"ratio"}));
  const auto& vf = f.body["view"]["render"]["components"][0]["transparency"]["viewer-filters"];
  REQUIRE(vf.size() == 1);
  CHECK(vf[0].get<std::string>().find("Furniture") != std::string::npos);

  // Another viewer still sees the unfiltered render byte for byte.
  auto cy = api.handle("GET", "/api/messages/" + root, nullptr, {{"viewer", "cy"}});
  CHECK(cy.body.dump() == before.body.dump());

  auto state = api.handle("GET", "/api/messages/" + root + "/viewer-filter", nullptr, {{"viewer", "ben"}});
  CHECK(state.body["state"].size() == 1);

  auto bad = api.handle("POST", "/api/messages/" + root + "/viewer-filter",
                        {{"viewer", "ben"},
                         {"component", "ratio"},
                         {"choice", {{"kind", "dropdown"}, {"column", "Region"}, {"values", {"West"}}}}});
  CHECK(bad.status == 422);
  CHECK(error_code(bad) == "UNDECLARED_FILTER");
  auto out_of_range = api.handle("POST", "/api/messages/" + root + "/viewer-filter",
                                 {{"viewer", "ben"},
                                  {"component", "ratio"},
                                  {"choice", {{"kind", "dropdown"}, {"column", "Category"}, {"values", {"Toys"}}}}});
  CHECK(error_code(out_of_range) == "FILTER_VALUE_OUT_OF_RANGE");

  auto cleared = api.handle("POST", "/api/messages/" + root + "/viewer-filter",
                            {{"viewer", "ben"}, {"component", "ratio"}, {"clear", true}});
  REQUIRE(cleared.status == 200);
  CHECK(cleared.body["view"]["filtered-components"].empty());
  auto ben = api.handle("GET", "/api/messages/" + root, nullptr, {{"viewer", "ben"}});
  CHECK(ben.body["render"].dump() == before.body["render"].dump());
}

TEST_CASE("routing errors and the wall clock") {
  auto ws = sample_workspace();
  Api api(*ws);
  auto wrong_method = api.handle("DELETE", "/api/channels");
  CHECK(wrong_method.status == 405);
  CHECK(error_code(wrong_method) == "METHOD_NOT_ALLOWED");
  auto no_route = api.handle("GET", "/api/nothing/here");
  CHECK(no_route.status == 404);
  CHECK(error_code(no_route) == "ROUTE_NOT_FOUND");
  CHECK(api.handle("POST", "/api/clock/advance", json::object()).status == 422);
  CHECK(api.handle("POST", "/api/clock/advance", {{"to", "2022-01-01T00:00"}}).status == 422);

  platform::Workspace wall(platform::ClockMode::Wall);
  Api wall_api(wall);
  auto clock = wall_api.handle("GET", "/api/clock");
  CHECK(clock.body["mode"] == "wall");
  auto adv = wall_api.handle("POST", "/api/clock/advance", {{"by", "1 day"}});
  CHECK(adv.status == 409);
  CHECK(error_code(adv) == "CLOCK_NOT_VIRTUAL");
}

TEST_CASE("mutations persist to the store file") {
  auto dir = std::filesystem::temp_directory_path() / "dashsnap_api_store";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto store = (dir / "store.json").string();
  {
    auto ws = sample_workspace();
    Api api(*ws, ApiOptions{store});
    publish_sales(api);
    api.handle("POST", "/api/clock/advance", {{"by", "1 month"}});
  }
  auto loaded = platform::Workspace::load(store);
  CHECK(loaded->now().iso() == "2022-05-04T09:00:00");
  CHECK(loaded->platform().store().latest("monthly").spec.version == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("HTTP server round trip") {
  auto ws = sample_workspace();
  Api api(*ws);
  HttpServer server(api, ServerOptions{3600});
  int port = server.start("127.0.0.1", 0);
  REQUIRE(port > 0);

  httplib::Client client("127.0.0.1", port);
  auto dashboards = client.Get("/api/dashboards");
  REQUIRE(dashboards);
  CHECK(dashboards->status == 200);
  CHECK(dashboards->get_header_value("Access-Control-Allow-Origin") == "*");
  CHECK(json::parse(dashboards->body)[0]["id"] == "superstore");

  auto created = client.Post("/api/components", sales_component_body().dump(), "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);

  auto missing = client.Get("/api/messages/m42?viewer=ben");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body)["error"]["code"] == "UNKNOWN_MESSAGE");

  auto bad_query = client.Get("/api/snapshots/x/render?version=abc");
  REQUIRE(bad_query);
  CHECK(bad_query->status == 400);

  auto options = client.Options("/api/components");
  REQUIRE(options);
  CHECK(options->status == 204);
  server.stop();
}
