// dashsnap: command-line front end for spec linting, offline rendering,
// the scheduler, the HTTP service and scenario replay.
//
// Exit codes: 0 success, 1 validation or spec errors, 2 I/O, store or usage
// errors.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "dashsnap/core/freshness.hpp"
#include "dashsnap/lifecycle/materialize.hpp"
#include "dashsnap/service/api.hpp"
#include "dashsnap/service/http_server.hpp"
#include "dashsnap/service/json_spec.hpp"
#include "dashsnap/service/scenario.hpp"
#include "dashsnap/spec_io/spec_io.hpp"
#include "dashsnap/templates/applicability.hpp"

namespace fs = std::filesystem;
using namespace dashsnap;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kIoError = 2;

/// Raised for failures that are the caller's environment, not the spec.
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw IoFailure("cannot write " + path.string());
}

Timestamp parse_instant(const std::string& text) {
  auto t = Timestamp::parse(text);
  if (!t) throw Error(Code::InvalidValue, "'" + text + "' is not a timestamp (YYYY-MM-DDTHH:MM)");
  return *t;
}

/// Set by the global --catalog option; the built-in catalog otherwise.
std::optional<std::string> g_catalog_path;

void apply_catalog(platform::Workspace& ws) {
  if (!g_catalog_path) return;
  ws.set_catalog(std::make_shared<const templates::Catalog>(templates::Catalog::load(read_text(*g_catalog_path))));
}

std::unique_ptr<platform::Workspace> workspace_with(const std::vector<std::string>& dashboards,
                                                    std::optional<std::string> now) {
  auto mode = now ? platform::ClockMode::Virtual : platform::ClockMode::Wall;
  auto ws = std::make_unique<platform::Workspace>(mode, now ? parse_instant(*now) : Timestamp{});
  apply_catalog(*ws);
  for (const auto& d : dashboards) ws->add_dashboard(d);
  return ws;
}

void print_report(const std::string& file, const ValidationReport& report) {
  for (const auto& v : report.violations) {
    std::cerr << file;
    if (v.span) std::cerr << ":" << v.span->line << ":" << v.span->column;
    std::string code(code_name(v.code));
    std::string message = v.message.rfind(code + ": ", 0) == 0 ? v.message.substr(code.size() + 2) : v.message;
    std::cerr << ": " << code << ": " << message;
    if (!v.path.empty()) std::cerr << " (at " << v.path << ")";
    std::cerr << "\n";
  }
}

void write_render(const lifecycle::SnapshotRender& render, const fs::path& out) {
  write_text(out / "render.json", lifecycle::to_json(render).dump(2) + "\n");
  for (const auto& c : render.components) {
    if (const auto* chart = c.body.find("chart")) write_text(out / (c.component_id + ".svg"), chart->content);
    std::string text;
    for (const auto* n : c.body.find_all("template-text")) text += n->content + "\n";
    for (const auto* n : c.body.find_all("caption")) text += n->content + "\n";
    if (!text.empty()) write_text(out / (c.component_id + ".txt"), text);
  }
}

// ---------------------------------------------------------------------------

struct LintArgs {
  std::vector<std::string> files;
  std::vector<std::string> dashboards;
};

int run_lint(const LintArgs& a) {
  auto ws = workspace_with(a.dashboards, "2000-01-01T00:00");
  templates::TemplateChecker checker(ws->catalog());
  bool all_ok = true;
  for (const auto& f : a.files) {
    auto report = spec_io::lint(read_text(f), a.dashboards.empty() ? nullptr : &ws->registry(), &checker);
    if (report.ok()) {
      std::cout << f << ": ok\n";
    } else {
      print_report(f, report);
      all_ok = false;
    }
  }
  return all_ok ? kOk : kInvalid;
}

struct RenderArgs {
  std::string file;
  std::vector<std::string> dashboards;
  std::optional<std::string> now;
  std::string out;
  int width = templates::kChartWidth;
};

int run_render(const RenderArgs& a) {
  auto ws = workspace_with(a.dashboards, a.now);
  auto spec = spec_io::parse_snapshot(read_text(a.file));
  templates::TemplateChecker checker(ws->catalog());
  auto report = validate_snapshot(spec, ws->registry(), &checker);
  if (!report.ok()) {
    print_report(a.file, report);
    return kInvalid;
  }
  lifecycle::MaterializeOptions opts;
  opts.width = a.width;
  opts.catalog = &ws->catalog();
  auto render = lifecycle::materialize(spec, ws->registry(), ws->clock(), opts);
  if (a.out.empty()) {
    std::cout << lifecycle::to_json(render).dump(2) << "\n";
  } else {
    write_render(render, a.out);
    std::cout << "wrote " << render.components.size() << " components to " << a.out << "\n";
  }
  return render.has_errors() ? kInvalid : kOk;
}

struct FreshnessArgs {
  std::string file;
  std::optional<std::string> now;
};

int run_freshness(const FreshnessArgs& a) {
  auto doc = spec_io::parse_document(read_text(a.file));
  if (!doc.is_snapshot()) {
    const auto& c = std::get<ComponentSpec>(doc.parsed);
    std::cout << "inferred " << infer_freshness(std::vector<ComponentSpec>{c}).iso() << "\n";
    return kOk;
  }
  const auto& s = std::get<SnapshotSpec>(doc.parsed);
  std::cout << "freshness " << s.freshness.iso() << "\n";
  std::cout << "inferred  " << infer_freshness(s.components).iso() << "\n";
  if (a.now) {
    FixedClock clock(parse_instant(*a.now));
    std::cout << (lifecycle::is_stale(s, clock) ? "stale" : "fresh") << " at " << clock.now().iso() << "\n";
  }
  return kOk;
}

struct InitArgs {
  std::string store;
  std::vector<std::string> dashboards;
  std::optional<std::string> start;
  bool force = false;
};

int run_init(const InitArgs& a) {
  if (fs::exists(a.store) && !a.force) throw IoFailure(a.store + " exists; pass --force to replace it");
  auto ws = workspace_with(a.dashboards, a.start);
  ws->save(a.store);
  std::cout << "created " << a.store << " (" << a.dashboards.size() << " dashboards, "
            << (a.start ? "virtual clock at " + ws->now().iso() : std::string("wall clock")) << ")\n";
  return kOk;
}

struct TickArgs {
  std::string store;
  std::optional<std::string> now;
};

int run_tick(const TickArgs& a) {
  auto ws = platform::Workspace::load(a.store);
  apply_catalog(*ws);
  if (a.now) ws->set_now(parse_instant(*a.now));
  service::Api api(*ws, service::ApiOptions{a.store});
  auto out = api.tick();
  ws->save(a.store);
  std::cout << out.dump(2) << "\n";
  for (const auto& u : out["updates"]) {
    if (!u["error"].is_null()) return kInvalid;
  }
  return kOk;
}

struct ServeArgs {
  std::optional<std::string> store;
  std::vector<std::string> dashboards;
  std::optional<std::string> start;
  std::string host = "127.0.0.1";
  int port = 8080;
  int tick_interval = 60;
};

std::atomic<bool> g_stop{false};

int run_serve(const ServeArgs& a) {
  std::unique_ptr<platform::Workspace> ws;
  if (a.store && fs::exists(*a.store)) {
    ws = platform::Workspace::load(*a.store);
    apply_catalog(*ws);
    for (const auto& d : a.dashboards) ws->add_dashboard(d);
  } else {
    ws = workspace_with(a.dashboards, a.start);
  }
  service::ApiOptions opts;
  opts.store_path = a.store;
  service::Api api(*ws, opts);
  service::HttpServer server(api, service::ServerOptions{a.tick_interval});
  std::signal(SIGINT, [](int) { g_stop = true; });
  std::signal(SIGTERM, [](int) { g_stop = true; });
  int port = server.start(a.host, a.port);
  std::cout << "listening on http://" << a.host << ":" << port << " ("
            << (ws->clock_mode() == platform::ClockMode::Virtual ? "virtual" : "wall") << " clock)" << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
  server.stop();
  return kOk;
}

struct ScenarioArgs {
  std::string file;
  bool keep_going = false;
  bool json_out = false;
  std::optional<std::string> store;
};

int run_scenario(const ScenarioArgs& a) {
  if (!fs::exists(a.file)) throw IoFailure("cannot read " + a.file);
  service::ScenarioOptions opts;
  opts.keep_going = a.keep_going;
  auto report = service::run_scenario_file(a.file, opts);
  if (a.json_out) {
    json steps = json::array();
    for (const auto& s : report.steps) {
      steps.push_back({{"index", s.index}, {"kind", s.kind}, {"method", s.method}, {"path", s.path},
                       {"status", s.status}, {"ok", s.ok}, {"response", s.response}});
    }
    std::cout << json{{"name", report.name}, {"ok", report.ok()}, {"seconds", report.seconds}, {"steps", steps}}.dump(2)
              << "\n";
  } else {
    std::cout << report.name << "\n";
    for (const auto& s : report.steps) {
      std::cout << (s.ok ? "  ok   " : "  FAIL ") << s.index << " " << s.kind << " " << s.method << " " << s.path
                << " -> " << s.status << "\n";
      if (!s.ok) std::cout << "       " << s.response.dump() << "\n";
    }
    std::cout << (report.ok() ? "passed" : "failed") << " in " << report.seconds << "s\n";
  }
  if (a.store) report.workspace->save(*a.store);
  return report.ok() ? kOk : kInvalid;
}

struct ExportArgs {
  std::string store;
  std::string snapshot;
  std::optional<int> version;
  std::string out;
  bool render = false;
};

int run_export(const ExportArgs& a) {
  auto ws = platform::Workspace::load(a.store);
  apply_catalog(*ws);
  const auto& store = ws->platform().store();
  if (!store.contains(a.snapshot)) throw Error(Code::UnknownSnapshot, "no snapshot '" + a.snapshot + "' in the store");
  auto spec = a.version ? store.version(a.snapshot, *a.version).spec : store.latest(a.snapshot).spec;
  if (a.render) {
    lifecycle::MaterializeOptions opts;
    opts.catalog = &ws->catalog();
    auto render = lifecycle::materialize(spec, ws->registry(), ws->clock(), opts);
    if (a.out.empty()) throw IoFailure("--render needs --out DIR");
    write_render(render, a.out);
    write_text(fs::path(a.out) / "snapshot.yaml", spec_io::serialize_snapshot(spec));
    std::cout << "wrote " << a.snapshot << " v" << spec.version << " to " << a.out << "\n";
    return kOk;
  }
  auto text = spec_io::serialize_snapshot(spec);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return kOk;
}

int run_routes() {
  for (const auto& r : service::Api::routes()) {
    std::cout << r.method << (r.method.size() < 4 ? "  " : " ") << r.pattern << "  " << r.summary << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dashsnap: dashboard snapshots for chat channels"};
  app.require_subcommand(1);
  app.add_option("--catalog", g_catalog_path, "template catalog YAML (default: the built-in one)")
      ->check(CLI::ExistingFile);
  std::function<int()> action;

  LintArgs lint;
  auto* lint_cmd = app.add_subcommand("lint", "validate snapshot or component spec files");
  lint_cmd->add_option("files", lint.files, "spec files (YAML or JSON)")->required()->check(CLI::ExistingFile);
  lint_cmd->add_option("-d,--dashboard", lint.dashboards, "dashboard descriptor supplying data-source schemas");
  lint_cmd->callback([&] { action = [&] { return run_lint(lint); }; });

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "materialize a snapshot spec against its data");
  render_cmd->add_option("file", render.file, "snapshot spec")->required()->check(CLI::ExistingFile);
  render_cmd->add_option("-d,--dashboard", render.dashboards, "dashboard descriptor with the data sources")
      ->required();
  render_cmd->add_option("--now", render.now, "render as of this instant (default: wall clock)");
  render_cmd->add_option("-o,--out", render.out, "directory for render.json, <component>.svg and .txt");
  render_cmd->add_option("--width", render.width, "chart width in pixels")->check(CLI::Range(120, 4000));
  render_cmd->callback([&] { action = [&] { return run_render(render); }; });

  FreshnessArgs fresh;
  auto* fresh_cmd = app.add_subcommand("freshness", "print the declared and inferred best-before dates");
  fresh_cmd->add_option("file", fresh.file, "snapshot or component spec")->required()->check(CLI::ExistingFile);
  fresh_cmd->add_option("--now", fresh.now, "also report staleness at this instant");
  fresh_cmd->callback([&] { action = [&] { return run_freshness(fresh); }; });

  InitArgs init;
  auto* init_cmd = app.add_subcommand("init", "create a store file");
  init_cmd->add_option("-s,--store", init.store, "store file to create")->required();
  init_cmd->add_option("-d,--dashboard", init.dashboards, "dashboard descriptors to register");
  init_cmd->add_option("--start", init.start, "use a virtual clock starting here (default: wall clock)");
  init_cmd->add_flag("--force", init.force, "replace an existing store");
  init_cmd->callback([&] { action = [&] { return run_init(init); }; });

  TickArgs tick;
  auto* tick_cmd = app.add_subcommand("tick", "run the scheduler once over a store");
  tick_cmd->add_option("-s,--store", tick.store, "store file")->required()->check(CLI::ExistingFile);
  tick_cmd->add_option("--now", tick.now, "move the virtual clock here first");
  tick_cmd->callback([&] { action = [&] { return run_tick(tick); }; });

  ServeArgs serve;
  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("-s,--store", serve.store, "store file, loaded if present and rewritten on each change");
  serve_cmd->add_option("-d,--dashboard", serve.dashboards, "dashboard descriptors to register");
  serve_cmd->add_option("--start", serve.start, "virtual clock start for a new store");
  serve_cmd->add_option("--host", serve.host, "bind address");
  serve_cmd->add_option("-p,--port", serve.port, "port (0 picks a free one)");
  serve_cmd->add_option("--tick-interval", serve.tick_interval, "seconds between scheduler ticks (0 disables)");
  serve_cmd->callback([&] { action = [&] { return run_serve(serve); }; });

  auto* scenario_cmd = app.add_subcommand("scenario", "scripted end-to-end runs");
  scenario_cmd->require_subcommand(1);
  ScenarioArgs scenario;
  auto* scenario_run = scenario_cmd->add_subcommand("run", "replay a scenario script through the API");
  scenario_run->add_option("file", scenario.file, "scenario YAML")->required();
  scenario_run->add_flag("--keep-going", scenario.keep_going, "continue after a failed step");
  scenario_run->add_flag("--json", scenario.json_out, "print every step with its response as JSON");
  scenario_run->add_option("--store", scenario.store, "save the final workspace here");
  scenario_run->callback([&] { action = [&] { return run_scenario(scenario); }; });

  ExportArgs exp;
  auto* export_cmd = app.add_subcommand("export", "write a stored snapshot version as canonical YAML");
  export_cmd->add_option("-s,--store", exp.store, "store file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("snapshot", exp.snapshot, "snapshot id")->required();
  export_cmd->add_option("--version", exp.version, "version (default: latest)");
  export_cmd->add_option("-o,--out", exp.out, "output file, or directory with --render");
  export_cmd->add_flag("--render", exp.render, "also materialize it at the store clock");
  export_cmd->callback([&] { action = [&] { return run_export(exp); }; });

  auto* routes_cmd = app.add_subcommand("routes", "list the HTTP routes");
  routes_cmd->callback([&] { action = [] { return run_routes(); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kIoError;
  }

  try {
    return action();
  } catch (const spec_io::ParseError& e) {
    std::cerr << "error at " << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kInvalid;
  } catch (const ValidationError& e) {
    print_report("input", e.report());
    return kInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case Code::Io:
      case Code::StoreCorrupt:
      case Code::StoreVersion:
        return kIoError;
      default:
        return kInvalid;
    }
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
}
