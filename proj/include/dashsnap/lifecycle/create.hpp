#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/table.hpp"
#include "dashsnap/templates/catalog.hpp"

namespace dashsnap::lifecycle {

struct CreateOptions {
  std::string id;
  /// Used when the selection has no date-range filter of its own.
  std::optional<TimeFrame> imposed_time_frame;
  Appearance appearance = Appearance::Visual;
  std::optional<TemplateBinding> template_binding;
  std::vector<InteractiveFilter> interactive_filters;
  std::optional<std::string> caption;
  std::optional<std::string> custom_text;
  std::vector<Annotation> annotations;
};

/// The frame a date-range filter spans: the largest calendar unit that
/// steps exactly from start to end, else days.
TimeFrame frame_of(const std::string& column, const DateRangePredicate& range);

/// Imports a selection verbatim and gives it a time frame: the selection's
/// first date-range filter, else the imposed frame. With `data`, a template
/// binding is checked against the categories present (coverage) and the
/// categories the source has (unknown keys).
/// Throws Error(NoTimeFrame), Error(TemplateInapplicable | Param*),
/// ValidationError for shape problems.
ComponentSpec create_component(const DashboardSelection& sel, const CreateOptions& options,
                               const Table* data = nullptr,
                               const templates::Catalog& catalog = templates::Catalog::builtin());

struct ComposeOverrides {
  std::optional<Date> freshness;
  std::optional<Completeness> completeness;
  std::optional<std::string> text_message;
};

struct ComposeRequest {
  std::string id;
  std::string title;
  std::string author;
  std::vector<ComponentSpec> components;
  Curation curation;
  UpdatePolicy update_policy;
  ComposeOverrides overrides;
};

/// Version 1, created now; freshness is the override or inferred from the
/// components. Throws ValidationError.
SnapshotSpec compose_snapshot(ComposeRequest request, const Clock& clock);

}  // namespace dashsnap::lifecycle
