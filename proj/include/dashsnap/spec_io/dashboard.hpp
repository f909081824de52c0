#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dashsnap/core/model.hpp"

namespace dashsnap::spec_io {

struct DataSourceRef {
  std::string id;
  std::string path;                    // CSV, relative to the descriptor
  std::optional<std::string> schema;   // sidecar YAML, relative to the descriptor

  friend bool operator==(const DataSourceRef&, const DataSourceRef&) = default;
};

/// The dashboard the analyst selects panels from.
struct DashboardDescriptor {
  std::string id;
  std::string title;
  std::vector<DataSourceRef> data_sources;
  std::vector<DashboardSelection> panels;

  const DashboardSelection* find_panel(std::string_view panel_id) const;

  friend bool operator==(const DashboardDescriptor&, const DashboardDescriptor&) = default;
};

/// Throws ParseError; also rejects duplicate panel ids and panels without
/// any measure or dimension.
DashboardDescriptor parse_dashboard(std::string_view text);

}  // namespace dashsnap::spec_io
