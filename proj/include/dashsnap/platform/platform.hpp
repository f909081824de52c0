#pragma once

#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dashsnap/data/registry.hpp"
#include "dashsnap/lifecycle/materialize.hpp"
#include "dashsnap/lifecycle/scheduler.hpp"
#include "dashsnap/lifecycle/store.hpp"
#include "dashsnap/lifecycle/update.hpp"

namespace dashsnap::platform {

using lifecycle::SnapshotRender;

struct Channel {
  std::string id;
  std::string name;
  std::vector<std::string> members;

  friend bool operator==(const Channel&, const Channel&) = default;
};

struct SnapshotRef {
  std::string snapshot_id;
  int version = 1;

  friend bool operator==(const SnapshotRef&, const SnapshotRef&) = default;
};

struct Message {
  std::string id;
  std::string channel_id;
  /// Root of the thread this message replies in; empty for a root message.
  std::optional<std::string> thread_root;
  std::string author;
  Timestamp timestamp;
  std::variant<std::string, SnapshotRef> body;
  std::map<std::string, int> reactions;

  const SnapshotRef* snapshot() const { return std::get_if<SnapshotRef>(&body); }

  friend bool operator==(const Message&, const Message&) = default;
};

/// A consumer's choice on one declared interactive filter.
struct DropdownChoice {
  std::string column;
  std::vector<Scalar> values;
  friend bool operator==(const DropdownChoice&, const DropdownChoice&) = default;
};
struct SliderChoice {
  std::string column;
  double min = 0;
  double max = 0;
  friend bool operator==(const SliderChoice&, const SliderChoice&) = default;
};
struct MacroChoice {
  std::string name;
  friend bool operator==(const MacroChoice&, const MacroChoice&) = default;
};

using FilterChoice = std::variant<DropdownChoice, SliderChoice, MacroChoice>;

/// "dropdown:<column>", "slider:<column>" or "macro:<name>"; one active
/// choice per key.
std::string choice_key(const FilterChoice& choice);
std::vector<DataFilter> to_data_filters(const FilterChoice& choice, const ComponentSpec& component);

/// component id -> key -> choice
using ComponentChoices = std::map<std::string, std::map<std::string, FilterChoice>>;

/// What one viewer sees for one message.
struct MessageView {
  Message message;
  std::optional<SnapshotRender> render;
  /// Set when a later version of the snapshot exists.
  std::optional<int> superseded_by;
  /// Components re-rendered with this viewer's filters.
  std::vector<std::string> filtered_components;

  friend bool operator==(const MessageView&, const MessageView&) = default;
};

nlohmann::json to_json(const Message& m);
nlohmann::json to_json(const MessageView& v);
/// Byte-stable text of a view, for comparing what two viewers see.
std::string view_bytes(const MessageView& v);

struct DisseminationEntry {
  std::string channel_id;
  std::string message_id;
  std::optional<std::string> thread_root;
  int version = 1;
  Timestamp posted_at;

  friend bool operator==(const DisseminationEntry&, const DisseminationEntry&) = default;
};

struct TickReport {
  std::string snapshot_id;
  int version = 0;
  std::vector<std::string> message_ids;
  std::optional<std::string> error;
};

/// Channels, threads and messages hosting snapshot renders, plus every
/// viewer's private filter state. Mutations are serialized; views and other
/// reads run concurrently.
class Platform {
 public:
  Platform() = default;
  Platform(const Platform&) = delete;
  Platform& operator=(const Platform&) = delete;

  /// Throws Error(InvalidValue) for a duplicate id.
  Channel create_channel(const std::string& id, const std::string& name, std::vector<std::string> members = {});
  std::vector<Channel> channels() const;

  /// Throws Error(UnknownChannel), Error(UnknownThread) when `thread_root` is
  /// not a root message of that channel.
  Message post_text(const std::string& channel, const std::optional<std::string>& thread_root,
                    const std::string& author, const std::string& text, const Clock& clock);

  /// Stores version 1 of a new snapshot, renders it and posts it.
  Message publish(const SnapshotSpec& s, const std::string& channel, const std::optional<std::string>& thread_root,
                  const DataSourceRegistry& registry, const Clock& clock);
  /// Posts an already stored version again (e.g. to another channel).
  Message repost(const SnapshotRef& ref, const std::string& channel, const std::optional<std::string>& thread_root,
                 const std::string& author, const DataSourceRegistry& registry, const Clock& clock);

  /// Manual update by the author: new version, posted as a reply in every
  /// thread the snapshot lives in. Returns those replies.
  std::vector<Message> update_manual(const std::string& snapshot_id, const lifecycle::ManualEdits& edits,
                                     const DataSourceRegistry& registry, const Clock& clock);
  /// A viewer asks for fresh numbers: the latest version re-rendered now,
  /// posted as a reply attributed to the viewer. The spec is unchanged.
  std::vector<Message> refresh(const std::string& snapshot_id, const std::string& viewer,
                               const DataSourceRegistry& registry, const Clock& clock);
  /// Runs the scheduler and posts each new version as a reply.
  std::vector<TickReport> tick(const DataSourceRegistry& registry, const Clock& clock);

  /// Throws Error(UnknownMessage).
  Message message(const std::string& id) const;
  /// Roots and replies in posting order.
  std::vector<Message> channel_messages(const std::string& channel) const;
  std::vector<Message> thread(const std::string& root_id) const;
  void react(const std::string& message_id, const std::string& emoji);

  /// Base render with staleness recomputed at `clock` and this viewer's
  /// filters applied to the affected components.
  MessageView view_message(const std::string& message_id, const std::string& viewer,
                           const DataSourceRegistry& registry, const Clock& clock) const;

  /// Throws Error(UnknownMessage), Error(NotFound) for an unknown component,
  /// Error(UndeclaredFilter), Error(FilterValueOutOfRange).
  ComponentChoices apply_filter(const std::string& message_id, const std::string& component_id,
                                const std::string& viewer, const FilterChoice& choice);
  /// Drops one choice (by key) or, without a key, every choice on the component.
  ComponentChoices clear_filter(const std::string& message_id, const std::string& component_id,
                                const std::string& viewer, const std::optional<std::string>& key = std::nullopt);
  ComponentChoices viewer_state(const std::string& message_id, const std::string& viewer) const;

  std::vector<DisseminationEntry> dissemination(const std::string& snapshot_id) const;

  lifecycle::SnapshotStore& store() { return store_; }
  const lifecycle::SnapshotStore& store() const { return store_; }
  /// The render posted with a message. Throws Error(UnknownMessage).
  SnapshotRender stored_render(const std::string& message_id) const;

  nlohmann::json to_json() const;
  /// Replaces the whole state. Throws Error(StoreCorrupt).
  void load_json(const nlohmann::json& j);

 private:
  using ViewerKey = std::pair<std::string, std::string>;  // viewer, message

  Message append_locked(Message m);
  void check_thread_locked(const std::string& channel, const std::optional<std::string>& root) const;
  const Message& message_locked(const std::string& id) const;
  std::vector<Message> post_update_locked(const SnapshotSpec& spec, const SnapshotRender& render,
                                          const std::string& author, const Timestamp& at);

  mutable std::shared_mutex mutex_;
  lifecycle::SnapshotStore store_;
  std::map<std::string, Channel> channels_;
  std::vector<Message> messages_;
  std::map<std::string, std::size_t> message_index_;
  std::map<std::string, SnapshotRender> renders_;  // by message id
  std::size_t next_message_ = 1;

  mutable std::shared_mutex viewer_mutex_;
  std::map<ViewerKey, ComponentChoices> viewer_states_;
};

}  // namespace dashsnap::platform
