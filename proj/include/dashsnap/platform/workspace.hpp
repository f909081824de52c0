#pragma once

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "dashsnap/data/registry.hpp"
#include "dashsnap/platform/platform.hpp"
#include "dashsnap/spec_io/dashboard.hpp"
#include "dashsnap/templates/catalog.hpp"

namespace dashsnap::platform {

inline constexpr int kStoreVersion = 1;

enum class ClockMode { Wall, Virtual };

/// Settable clock that may be read while another thread moves it.
class VirtualClock final : public Clock {
 public:
  explicit VirtualClock(Timestamp start) : seconds_(start.seconds()) {}
  Timestamp now() const override { return Timestamp{seconds_.load()}; }
  void set(Timestamp t) { seconds_.store(t.seconds()); }

 private:
  std::atomic<std::int64_t> seconds_;
};

/// Everything a running service or a CLI invocation works on: dashboards
/// and their data sources, the platform with its snapshot store, and the
/// clock. Saved to and loaded from one JSON store file.
class Workspace {
 public:
  /// Virtual mode starts the clock at `start`; wall mode ignores it.
  explicit Workspace(ClockMode mode = ClockMode::Virtual, Timestamp start = {});

  /// Parses a dashboard descriptor and registers its data sources, with
  /// paths taken relative to the descriptor. Throws ParseError, Error(Io),
  /// Error(InvalidValue) for a duplicate dashboard id.
  const spec_io::DashboardDescriptor& add_dashboard(const std::string& path);
  std::vector<spec_io::DashboardDescriptor> dashboards() const;
  /// Throws Error(NotFound).
  spec_io::DashboardDescriptor dashboard(const std::string& id) const;
  DashboardSelection panel(const std::string& dashboard_id, const std::string& panel_id) const;

  DataSourceRegistry& registry() { return registry_; }
  const DataSourceRegistry& registry() const { return registry_; }
  Platform& platform() { return platform_; }
  const Platform& platform() const { return platform_; }
  const templates::Catalog& catalog() const { return *catalog_; }
  void set_catalog(std::shared_ptr<const templates::Catalog> catalog) { catalog_ = std::move(catalog); }

  ClockMode clock_mode() const { return mode_; }
  const Clock& clock() const;
  Timestamp now() const { return clock().now(); }
  /// Virtual mode only; throws Error(InvalidValue) in wall mode or when the
  /// new instant is earlier than the current one.
  void set_now(Timestamp t);
  void advance(const Duration& d);

  nlohmann::json to_json() const;
  /// Throws Error(StoreVersion) for a newer format, Error(StoreCorrupt).
  void load_json(const nlohmann::json& j);

  /// Writes atomically (temporary file + rename). Throws Error(Io).
  void save(const std::string& path) const;
  /// Throws Error(Io), Error(StoreCorrupt), Error(StoreVersion).
  static std::unique_ptr<Workspace> load(const std::string& path);

 private:
  struct Dashboard {
    std::string path;
    spec_io::DashboardDescriptor descriptor;
  };
  mutable std::mutex mutex_;
  ClockMode mode_;
  VirtualClock virtual_clock_;
  SystemClock wall_clock_;
  std::vector<Dashboard> dashboards_;
  DataSourceRegistry registry_;
  Platform platform_;
  std::shared_ptr<const templates::Catalog> catalog_;
};

}  // namespace dashsnap::platform
