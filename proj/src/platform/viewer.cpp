#include <algorithm>
#include <mutex>

#include "dashsnap/core/error.hpp"
#include "dashsnap/platform/platform.hpp"

namespace dashsnap::platform {

using nlohmann::json;

namespace {

template <class T>
const T* declared(const ComponentSpec& c, const std::string& name) {
  for (const auto& f : c.interactive_filters) {
    const auto* d = std::get_if<T>(&f);
    if (!d) continue;
    if constexpr (std::is_same_v<T, MacroFilter>) {
      if (d->name == name) return d;
    } else {
      if (d->column == name) return d;
    }
  }
  return nullptr;
}

Error undeclared(const ComponentSpec& c, const std::string& what) {
  return Error(Code::UndeclaredFilter, "component '" + c.id + "' declares no " + what);
}

// Replaces each chosen value by the declared one it matches, so filters get
// the column's type even when the request carried e.g. a number as text.
DropdownChoice checked(const DropdownChoice& choice, const ComponentSpec& c) {
  const auto* d = declared<DropdownFilter>(c, choice.column);
  if (!d) throw undeclared(c, "dropdown on '" + choice.column + "'");
  if (choice.values.empty()) throw Error(Code::FilterValueOutOfRange, "a dropdown choice needs at least one value");
  DropdownChoice out{choice.column, {}};
  for (const auto& v : choice.values) {
    auto it = std::find_if(d->values.begin(), d->values.end(),
                           [&](const Scalar& allowed) { return display(allowed) == display(v); });
    if (it == d->values.end()) {
      throw Error(Code::FilterValueOutOfRange, "'" + display(v) + "' is not offered by the dropdown on '" +
                                                   choice.column + "'");
    }
    out.values.push_back(*it);
  }
  return out;
}

SliderChoice checked(const SliderChoice& choice, const ComponentSpec& c) {
  const auto* d = declared<SliderFilter>(c, choice.column);
  if (!d) throw undeclared(c, "slider on '" + choice.column + "'");
  if (choice.min > choice.max || choice.min < d->min || choice.max > d->max) {
    throw Error(Code::FilterValueOutOfRange, "slider on '" + choice.column + "' accepts " + format_number(d->min) +
                                                 " to " + format_number(d->max));
  }
  return choice;
}

MacroChoice checked(const MacroChoice& choice, const ComponentSpec& c) {
  if (!declared<MacroFilter>(c, choice.name)) throw undeclared(c, "macro '" + choice.name + "'");
  return choice;
}

}  // namespace

std::string choice_key(const FilterChoice& choice) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, DropdownChoice>) return "dropdown:" + c.column;
        else if constexpr (std::is_same_v<T, SliderChoice>) return "slider:" + c.column;
        else return "macro:" + c.name;
      },
      choice);
}

std::vector<DataFilter> to_data_filters(const FilterChoice& choice, const ComponentSpec& component) {
  if (const auto* d = std::get_if<DropdownChoice>(&choice)) {
    if (d->values.size() == 1) return {{d->column, EqualsPredicate{d->values.front()}}};
    return {{d->column, OneOfPredicate{d->values}}};
  }
  if (const auto* s = std::get_if<SliderChoice>(&choice)) return {{s->column, RangePredicate{s->min, s->max}}};
  const auto& name = std::get<MacroChoice>(choice).name;
  const auto* macro = declared<MacroFilter>(component, name);
  if (!macro) throw undeclared(component, "macro '" + name + "'");
  return macro->filters;
}

ComponentChoices Platform::apply_filter(const std::string& message_id, const std::string& component_id,
                                        const std::string& viewer, const FilterChoice& choice) {
  SnapshotSpec spec;
  {
    std::shared_lock lock(mutex_);
    const auto* ref = message_locked(message_id).snapshot();
    if (!ref) throw Error(Code::UnknownMessage, "message '" + message_id + "' holds no snapshot");
    spec = store_.version(ref->snapshot_id, ref->version).spec;
  }
  const auto* c = spec.find_component(component_id);
  if (!c) throw Error(Code::NotFound, "snapshot '" + spec.id + "' has no component '" + component_id + "'");
  FilterChoice valid = std::visit([&](const auto& ch) -> FilterChoice { return checked(ch, *c); }, choice);

  std::unique_lock lock(viewer_mutex_);
  auto& state = viewer_states_[{viewer, message_id}];
  state[component_id][choice_key(valid)] = valid;
  return state;
}

ComponentChoices Platform::clear_filter(const std::string& message_id, const std::string& component_id,
                                        const std::string& viewer, const std::optional<std::string>& key) {
  {
    std::shared_lock lock(mutex_);
    message_locked(message_id);
  }
  std::unique_lock lock(viewer_mutex_);
  auto it = viewer_states_.find({viewer, message_id});
  if (it == viewer_states_.end()) return {};
  auto& state = it->second;
  if (key) {
    if (auto c = state.find(component_id); c != state.end()) {
      c->second.erase(*key);
      if (c->second.empty()) state.erase(c);
    }
  } else {
    state.erase(component_id);
  }
  ComponentChoices out = state;
  if (state.empty()) viewer_states_.erase(it);
  return out;
}

ComponentChoices Platform::viewer_state(const std::string& message_id, const std::string& viewer) const {
  std::shared_lock lock(viewer_mutex_);
  auto it = viewer_states_.find({viewer, message_id});
  return it == viewer_states_.end() ? ComponentChoices{} : it->second;
}

MessageView Platform::view_message(const std::string& message_id, const std::string& viewer,
                                   const DataSourceRegistry& registry, const Clock& clock) const {
  MessageView view;
  SnapshotSpec spec;
  {
    std::shared_lock lock(mutex_);
    view.message = message_locked(message_id);
    const auto* ref = view.message.snapshot();
    if (!ref) return view;
    view.render = renders_.at(message_id);
    spec = store_.version(ref->snapshot_id, ref->version).spec;
    int latest = store_.latest(ref->snapshot_id).spec.version;
    if (latest > ref->version) view.superseded_by = latest;
  }
  auto& render = *view.render;
  render.freshness.stale = lifecycle::is_stale(render.freshness.fresh_until, clock.now());

  auto choices = viewer_state(message_id, viewer);
  if (choices.empty()) return view;
  lifecycle::MaterializeOptions options;
  SnapshotSpec subset = spec;
  subset.components.clear();
  for (const auto& [component_id, by_key] : choices) {
    const auto* c = spec.find_component(component_id);
    if (!c) continue;
    subset.components.push_back(*c);
    auto& filters = options.viewer_filters[component_id];
    for (const auto& [_, choice] : by_key) {
      auto extra = to_data_filters(choice, *c);
      filters.insert(filters.end(), extra.begin(), extra.end());
    }
  }
  subset.completeness.reset();
  auto filtered = lifecycle::materialize(subset, registry, clock, options);
  for (auto& fc : filtered.components) {
    for (auto& base : render.components) {
      if (base.component_id == fc.component_id) base = fc;
    }
    view.filtered_components.push_back(fc.component_id);
  }
  return view;
}

json to_json(const MessageView& v) {
  json out{{"message", to_json(v.message)}, {"filtered-components", v.filtered_components}};
  out["render"] = v.render ? lifecycle::to_json(*v.render) : json(nullptr);
  out["superseded-by"] = v.superseded_by ? json(*v.superseded_by) : json(nullptr);
  return out;
}

std::string view_bytes(const MessageView& v) { return to_json(v).dump(); }

}  // namespace dashsnap::platform
