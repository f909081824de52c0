#include "dashsnap/service/scenario.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dashsnap/service/api.hpp"
#include "dashsnap/service/json_spec.hpp"
#include "dashsnap/spec_io/yaml_reader.hpp"

namespace dashsnap::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kKinds{"channel", "component", "snapshot", "publish", "post", "filter",
                                   "view",    "render",    "advance",  "tick",    "update", "refresh",
                                   "react",   "dissemination", "call"};

json substitute(const json& j, const std::map<std::string, std::string>& names) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s.size() > 1 && s[0] == '$') {
      auto it = names.find(s.substr(1));
      if (it == names.end()) throw Error(Code::NotFound, "scenario name '" + s + "' was never captured");
      return it->second;
    }
    return j;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(substitute(v, names));
    return out;
  }
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [k, v] : j.items()) out[k] = substitute(v, names);
    return out;
  }
  return j;
}

std::string take(json& args, const std::string& key) {
  if (!args.is_object() || !args.contains(key) || !args[key].is_string()) {
    throw Error(Code::MissingField, "scenario step needs '" + key + "'");
  }
  auto v = args[key].get<std::string>();
  args.erase(key);
  return v;
}

std::optional<std::string> take_optional(json& args, const std::string& key) {
  if (!args.is_object() || !args.contains(key)) return std::nullopt;
  auto v = args[key].is_string() ? args[key].get<std::string>() : args[key].dump();
  args.erase(key);
  return v;
}

struct Call {
  std::string method;
  std::string path;
  json body;
  std::map<std::string, std::string> query;
};

void collect_renders(const json& j, std::vector<json>& out) {
  if (j.is_object()) {
    if (j.contains("snapshot-id") && j.contains("components") && j.contains("layout")) {
      out.push_back(j);
      return;
    }
    for (const auto& [_, v] : j.items()) collect_renders(v, out);
  } else if (j.is_array()) {
    for (const auto& v : j) collect_renders(v, out);
  }
}

}  // namespace

bool ScenarioReport::ok() const {
  for (const auto& s : steps) {
    if (!s.ok) return false;
  }
  return !steps.empty();
}

std::vector<json> ScenarioReport::renders() const {
  std::vector<json> out;
  for (const auto& s : steps) collect_renders(s.response, out);
  return out;
}

ScenarioReport run_scenario(std::string_view script, const std::string& base_dir, const ScenarioOptions& options) {
  auto started = std::chrono::steady_clock::now();
  auto root = spec_io::load_document(script);
  spec_io::ReadContext ctx;
  spec_io::MapReader m(root, "", ctx, {"name", "dashboard", "start", "steps"});

  ScenarioReport report;
  report.name = m.has("name") ? spec_io::read_text(*m.get("name")) : "scenario";
  auto start = spec_io::read_timestamp(m.require("start"));
  report.workspace = std::make_unique<platform::Workspace>(platform::ClockMode::Virtual, start);
  auto& ws = *report.workspace;
  auto add = [&](const YAML::Node& n) { ws.add_dashboard((fs::path(base_dir) / spec_io::read_text(n)).string()); };
  auto dashboards = m.require("dashboard");
  if (dashboards.IsSequence()) {
    for (const auto& d : dashboards) add(d);
  } else {
    add(dashboards);
  }

  Api api(ws);
  std::map<std::string, json> components;
  auto steps = spec_io::read_sequence(m.require("steps"), "steps", ctx);
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& node = steps[i];
    if (!node.IsMap()) spec_io::fail(Code::TypeMismatch, node, "a step is a mapping");
    std::string kind;
    std::optional<int> expect;
    std::optional<std::string> capture;
    YAML::Node args_node;
    for (const auto& kv : node) {
      auto key = kv.first.Scalar();
      if (key == "expect-status") {
        expect = spec_io::read_int(kv.second);
      } else if (key == "as") {
        capture = spec_io::read_identifier(kv.second);
      } else if (key == "note") {
        continue;
      } else if (kKinds.count(key)) {
        if (!kind.empty()) spec_io::fail(Code::InvalidValue, kv.first, "a step has exactly one kind");
        kind = key;
        args_node = kv.second;
      } else {
        spec_io::fail(Code::UnknownKey, kv.first, "unknown step key '" + key + "'");
      }
    }
    if (kind.empty()) spec_io::fail(Code::MissingField, node, "step has no kind");

    auto args = substitute(yaml_to_json(args_node), report.names);
    Call call;
    if (kind == "channel") {
      call = {"POST", "/api/channels", args, {}};
    } else if (kind == "component") {
      call = {"POST", "/api/components", args, {}};
    } else if (kind == "snapshot") {
      if (args.contains("components") && args["components"].is_array()) {
        for (auto& c : args["components"]) {
          if (!c.is_string()) continue;
          auto it = components.find(c.get<std::string>());
          if (it == components.end()) throw Error(Code::NotFound, "no component '" + c.get<std::string>() + "' yet");
          c = it->second;
        }
      }
      call = {"POST", "/api/snapshots", args, {}};
    } else if (kind == "publish") {
      auto id = take(args, "snapshot");
      call = {"POST", "/api/snapshots/" + id + "/publish", args, {}};
    } else if (kind == "post") {
      auto channel = take(args, "channel");
      call = {"POST", "/api/channels/" + channel + "/messages", args, {}};
    } else if (kind == "filter") {
      auto message = take(args, "message");
      call = {"POST", "/api/messages/" + message + "/viewer-filter", args, {}};
    } else if (kind == "view") {
      auto message = take(args, "message");
      call = {"GET", "/api/messages/" + message, nullptr, {{"viewer", take_optional(args, "viewer").value_or("")}}};
    } else if (kind == "render") {
      auto id = take(args, "snapshot");
      call = {"GET", "/api/snapshots/" + id + "/render", nullptr, {}};
      if (auto v = take_optional(args, "version")) call.query["version"] = *v;
      if (auto w = take_optional(args, "width")) call.query["width"] = *w;
    } else if (kind == "advance") {
      call = {"POST", "/api/clock/advance", args.is_string() ? json{{"by", args}} : args, {}};
    } else if (kind == "tick") {
      call = {"POST", "/api/tick", json::object(), {}};
    } else if (kind == "update") {
      auto id = take(args, "snapshot");
      call = {"POST", "/api/snapshots/" + id + "/update", args, {}};
    } else if (kind == "refresh") {
      auto id = take(args, "snapshot");
      call = {"POST", "/api/snapshots/" + id + "/refresh", args, {}};
    } else if (kind == "react") {
      auto message = take(args, "message");
      call = {"POST", "/api/messages/" + message + "/reactions", args, {}};
    } else if (kind == "dissemination") {
      auto id = take(args, "snapshot");
      call = {"GET", "/api/snapshots/" + id + "/dissemination", nullptr, {}};
    } else {
      call.method = take(args, "method");
      call.path = take(args, "path");
      if (args.contains("body")) call.body = args["body"];
      if (args.contains("query")) {
        for (const auto& [k, v] : args["query"].items()) call.query[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }

    auto response = api.handle(call.method, call.path, call.body, call.query);
    StepResult result{i, kind, call.method, call.path, response.status, response.body, false};
    result.ok = expect ? response.status == *expect : response.status < 400;
    if (result.ok && kind == "component") {
      const auto& c = response.body["component"];
      components[c["id"].get<std::string>()] = c;
    }
    if (result.ok && capture) {
      const auto& body = response.body;
      if (body.contains("message")) {
        report.names[*capture] = body["message"]["id"].get<std::string>();
      } else if (body.contains("id") && body["id"].is_string()) {
        report.names[*capture] = body["id"].get<std::string>();
      } else if (body.contains("messages") && !body["messages"].empty()) {
        report.names[*capture] = body["messages"][0]["id"].get<std::string>();
      } else if (body.contains("updates") && !body["updates"].empty() && !body["updates"][0]["messages"].empty()) {
        report.names[*capture] = body["updates"][0]["messages"][0].get<std::string>();
      }
    }
    report.steps.push_back(std::move(result));
    if (!report.steps.back().ok && !options.keep_going) break;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ScenarioReport run_scenario_file(const std::string& path, const ScenarioOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  auto base = fs::absolute(path).parent_path().string();
  return run_scenario(ss.str(), base, options);
}

}  // namespace dashsnap::service
