#include "dashsnap/platform/workspace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dashsnap/core/error.hpp"

namespace dashsnap::platform {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Workspace::Workspace(ClockMode mode, Timestamp start)
    : mode_(mode),
      virtual_clock_(start),
      catalog_(std::shared_ptr<const templates::Catalog>(&templates::Catalog::builtin(), [](auto*) {})) {}

const spec_io::DashboardDescriptor& Workspace::add_dashboard(const std::string& path) {
  auto absolute = fs::absolute(path).lexically_normal();
  auto descriptor = spec_io::parse_dashboard(slurp(absolute.string()));
  std::lock_guard lock(mutex_);
  for (const auto& d : dashboards_) {
    if (d.descriptor.id == descriptor.id) {
      throw Error(Code::InvalidValue, "dashboard '" + descriptor.id + "' is already loaded");
    }
  }
  auto base = absolute.parent_path();
  for (const auto& src : descriptor.data_sources) {
    FileSource file{src.id, (base / src.path).lexically_normal().string(), std::nullopt};
    if (src.schema) file.schema_path = (base / *src.schema).lexically_normal().string();
    if (!registry_.contains(src.id)) registry_.add_file(file);
  }
  dashboards_.push_back({absolute.string(), std::move(descriptor)});
  return dashboards_.back().descriptor;
}

std::vector<spec_io::DashboardDescriptor> Workspace::dashboards() const {
  std::lock_guard lock(mutex_);
  std::vector<spec_io::DashboardDescriptor> out;
  for (const auto& d : dashboards_) out.push_back(d.descriptor);
  return out;
}

spec_io::DashboardDescriptor Workspace::dashboard(const std::string& id) const {
  std::lock_guard lock(mutex_);
  for (const auto& d : dashboards_) {
    if (d.descriptor.id == id) return d.descriptor;
  }
  throw Error(Code::NotFound, "no dashboard '" + id + "'");
}

DashboardSelection Workspace::panel(const std::string& dashboard_id, const std::string& panel_id) const {
  auto d = dashboard(dashboard_id);
  const auto* p = d.find_panel(panel_id);
  if (!p) throw Error(Code::NotFound, "dashboard '" + dashboard_id + "' has no panel '" + panel_id + "'");
  return *p;
}

const Clock& Workspace::clock() const {
  if (mode_ == ClockMode::Wall) return wall_clock_;
  return virtual_clock_;
}

void Workspace::set_now(Timestamp t) {
  if (mode_ != ClockMode::Virtual) throw Error(Code::InvalidValue, "the clock can only be set in virtual mode");
  std::lock_guard lock(mutex_);
  if (t < virtual_clock_.now()) {
    throw Error(Code::InvalidValue, "virtual time only moves forward (now " + virtual_clock_.now().iso() + ")");
  }
  virtual_clock_.set(t);
}

void Workspace::advance(const Duration& d) {
  if (mode_ != ClockMode::Virtual) throw Error(Code::InvalidValue, "the clock can only be advanced in virtual mode");
  std::lock_guard lock(mutex_);
  FixedClock next(virtual_clock_.now());
  next.advance(d);
  virtual_clock_.set(next.now());
}

json Workspace::to_json() const {
  json dashboards = json::array();
  json sources = json::array();
  {
    std::lock_guard lock(mutex_);
    for (const auto& d : dashboards_) dashboards.push_back(d.path);
  }
  for (const auto& f : registry_.file_sources()) {
    json s{{"id", f.id}, {"csv", f.csv_path}};
    if (f.schema_path) s["schema"] = *f.schema_path;
    sources.push_back(std::move(s));
  }
  json clock{{"mode", mode_ == ClockMode::Virtual ? "virtual" : "wall"}};
  if (mode_ == ClockMode::Virtual) clock["now"] = virtual_clock_.now().iso();
  return {{"store-version", kStoreVersion},
          {"clock", clock},
          {"dashboards", dashboards},
          {"data-sources", sources},
          {"platform", platform_.to_json()}};
}

void Workspace::load_json(const json& j) {
  if (!j.is_object() || !j.contains("store-version") || !j.at("store-version").is_number_integer()) {
    throw Error(Code::StoreCorrupt, "store file has no store-version");
  }
  int version = j.at("store-version").get<int>();
  if (version != kStoreVersion) {
    throw Error(Code::StoreVersion, "store-version " + std::to_string(version) + " is not supported (expected " +
                                        std::to_string(kStoreVersion) + ")");
  }
  try {
    const auto& clock = j.at("clock");
    mode_ = clock.at("mode").get<std::string>() == "wall" ? ClockMode::Wall : ClockMode::Virtual;
    if (mode_ == ClockMode::Virtual) virtual_clock_.set(Timestamp::from_iso(clock.at("now").get<std::string>()));
    for (const auto& s : j.at("data-sources")) {
      FileSource f{s.at("id").get<std::string>(), s.at("csv").get<std::string>(), std::nullopt};
      if (s.contains("schema")) f.schema_path = s.at("schema").get<std::string>();
      if (!registry_.contains(f.id)) registry_.add_file(f);
    }
    for (const auto& d : j.at("dashboards")) add_dashboard(d.get<std::string>());
    platform_.load_json(j.at("platform"));
  } catch (const json::exception& e) {
    throw Error(Code::StoreCorrupt, std::string("malformed store: ") + e.what());
  }
}

void Workspace::save(const std::string& path) const {
  auto text = to_json().dump(2);
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Code::Io, "cannot write " + tmp);
    out << text << '\n';
    if (!out) throw Error(Code::Io, "cannot write " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(Code::Io, "cannot replace " + path + ": " + ec.message());
}

std::unique_ptr<Workspace> Workspace::load(const std::string& path) {
  auto text = slurp(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Code::StoreCorrupt, path + " is not valid JSON: " + e.what());
  }
  auto ws = std::make_unique<Workspace>();
  ws->load_json(j);
  return ws;
}

}  // namespace dashsnap::platform
