#include "dashsnap/platform/platform.hpp"

#include <mutex>
#include <set>

#include "dashsnap/core/error.hpp"

namespace dashsnap::platform {

using nlohmann::json;

json to_json(const Message& m) {
  json out{{"id", m.id},
           {"channel", m.channel_id},
           {"author", m.author},
           {"timestamp", m.timestamp.iso()},
           {"reactions", m.reactions}};
  out["thread-root"] = m.thread_root ? json(*m.thread_root) : json(nullptr);
  if (const auto* ref = m.snapshot()) {
    out["snapshot"] = {{"id", ref->snapshot_id}, {"version", ref->version}};
  } else {
    out["text"] = std::get<std::string>(m.body);
  }
  return out;
}

Channel Platform::create_channel(const std::string& id, const std::string& name, std::vector<std::string> members) {
  std::unique_lock lock(mutex_);
  if (id.empty()) throw Error(Code::InvalidValue, "channel id must not be empty");
  if (channels_.count(id)) throw Error(Code::InvalidValue, "channel '" + id + "' already exists");
  Channel c{id, name.empty() ? id : name, std::move(members)};
  channels_[id] = c;
  return c;
}

std::vector<Channel> Platform::channels() const {
  std::shared_lock lock(mutex_);
  std::vector<Channel> out;
  for (const auto& [_, c] : channels_) out.push_back(c);
  return out;
}

const Message& Platform::message_locked(const std::string& id) const {
  auto it = message_index_.find(id);
  if (it == message_index_.end()) throw Error(Code::UnknownMessage, "no message '" + id + "'");
  return messages_[it->second];
}

void Platform::check_thread_locked(const std::string& channel, const std::optional<std::string>& root) const {
  if (!channels_.count(channel)) throw Error(Code::UnknownChannel, "no channel '" + channel + "'");
  if (!root) return;
  auto it = message_index_.find(*root);
  if (it == message_index_.end()) throw Error(Code::UnknownThread, "no thread '" + *root + "'");
  const auto& m = messages_[it->second];
  if (m.channel_id != channel || m.thread_root) {
    throw Error(Code::UnknownThread, "'" + *root + "' is not a thread in channel '" + channel + "'");
  }
}

Message Platform::append_locked(Message m) {
  m.id = "m" + std::to_string(next_message_++);
  message_index_[m.id] = messages_.size();
  messages_.push_back(m);
  return m;
}

Message Platform::post_text(const std::string& channel, const std::optional<std::string>& thread_root,
                            const std::string& author, const std::string& text, const Clock& clock) {
  std::unique_lock lock(mutex_);
  check_thread_locked(channel, thread_root);
  return append_locked({"", channel, thread_root, author, clock.now(), text, {}});
}

Message Platform::publish(const SnapshotSpec& s, const std::string& channel,
                          const std::optional<std::string>& thread_root, const DataSourceRegistry& registry,
                          const Clock& clock) {
  auto render = lifecycle::materialize(s, registry, clock);
  std::unique_lock lock(mutex_);
  check_thread_locked(channel, thread_root);
  store_.create(s, clock.now());
  auto m = append_locked({"", channel, thread_root, s.author, clock.now(), SnapshotRef{s.id, s.version}, {}});
  renders_[m.id] = std::move(render);
  return m;
}

Message Platform::repost(const SnapshotRef& ref, const std::string& channel,
                         const std::optional<std::string>& thread_root, const std::string& author,
                         const DataSourceRegistry& registry, const Clock& clock) {
  auto spec = store_.version(ref.snapshot_id, ref.version).spec;
  auto render = lifecycle::materialize(spec, registry, clock);
  std::unique_lock lock(mutex_);
  check_thread_locked(channel, thread_root);
  auto m = append_locked({"", channel, thread_root, author, clock.now(), ref, {}});
  renders_[m.id] = std::move(render);
  return m;
}

std::vector<Message> Platform::post_update_locked(const SnapshotSpec& spec, const SnapshotRender& render,
                                                  const std::string& author, const Timestamp& at) {
  // one reply per thread the snapshot has been posted in
  std::vector<std::pair<std::string, std::string>> threads;  // channel, root
  std::set<std::string> seen;
  for (const auto& m : messages_) {
    const auto* ref = m.snapshot();
    if (!ref || ref->snapshot_id != spec.id) continue;
    std::string root = m.thread_root.value_or(m.id);
    if (seen.insert(root).second) threads.emplace_back(m.channel_id, root);
  }
  std::vector<Message> out;
  for (const auto& [channel, root] : threads) {
    auto m = append_locked({"", channel, root, author, at, SnapshotRef{spec.id, spec.version}, {}});
    renders_[m.id] = render;
    out.push_back(m);
  }
  return out;
}

std::vector<Message> Platform::update_manual(const std::string& snapshot_id, const lifecycle::ManualEdits& edits,
                                             const DataSourceRegistry& registry, const Clock& clock) {
  std::lock_guard guard(store_.update_lock(snapshot_id));
  auto next = lifecycle::update_manual(store_.latest(snapshot_id).spec, edits, clock);
  auto render = lifecycle::materialize(next, registry, clock);
  std::unique_lock lock(mutex_);
  store_.append(next, clock.now());
  return post_update_locked(next, render, next.author, clock.now());
}

std::vector<Message> Platform::refresh(const std::string& snapshot_id, const std::string& viewer,
                                       const DataSourceRegistry& registry, const Clock& clock) {
  auto spec = store_.latest(snapshot_id).spec;
  auto render = lifecycle::materialize(spec, registry, clock);
  std::unique_lock lock(mutex_);
  return post_update_locked(spec, render, viewer, clock.now());
}

std::vector<TickReport> Platform::tick(const DataSourceRegistry& registry, const Clock& clock) {
  auto outcomes = lifecycle::scheduler_tick(store_, registry, clock);
  std::vector<TickReport> out;
  std::unique_lock lock(mutex_);
  for (auto& o : outcomes) {
    TickReport r{o.snapshot_id, o.version, {}, o.error};
    if (o.spec && o.render) {
      for (const auto& m : post_update_locked(*o.spec, *o.render, o.spec->author, o.due)) {
        r.message_ids.push_back(m.id);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

Message Platform::message(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return message_locked(id);
}

std::vector<Message> Platform::channel_messages(const std::string& channel) const {
  std::shared_lock lock(mutex_);
  if (!channels_.count(channel)) throw Error(Code::UnknownChannel, "no channel '" + channel + "'");
  std::vector<Message> out;
  for (const auto& m : messages_) {
    if (m.channel_id == channel) out.push_back(m);
  }
  return out;
}

std::vector<Message> Platform::thread(const std::string& root_id) const {
  std::shared_lock lock(mutex_);
  const auto& root = message_locked(root_id);
  if (root.thread_root) throw Error(Code::UnknownThread, "'" + root_id + "' is a reply, not a thread");
  std::vector<Message> out{root};
  for (const auto& m : messages_) {
    if (m.thread_root == root_id) out.push_back(m);
  }
  return out;
}

void Platform::react(const std::string& message_id, const std::string& emoji) {
  std::unique_lock lock(mutex_);
  auto it = message_index_.find(message_id);
  if (it == message_index_.end()) throw Error(Code::UnknownMessage, "no message '" + message_id + "'");
  messages_[it->second].reactions[emoji] += 1;
}

SnapshotRender Platform::stored_render(const std::string& message_id) const {
  std::shared_lock lock(mutex_);
  auto it = renders_.find(message_id);
  if (it == renders_.end()) throw Error(Code::UnknownMessage, "message '" + message_id + "' holds no snapshot");
  return it->second;
}

std::vector<DisseminationEntry> Platform::dissemination(const std::string& snapshot_id) const {
  if (!store_.contains(snapshot_id)) throw Error(Code::UnknownSnapshot, "no snapshot '" + snapshot_id + "'");
  std::shared_lock lock(mutex_);
  std::vector<DisseminationEntry> out;
  for (const auto& m : messages_) {
    const auto* ref = m.snapshot();
    if (ref && ref->snapshot_id == snapshot_id) {
      out.push_back({m.channel_id, m.id, m.thread_root, ref->version, m.timestamp});
    }
  }
  return out;
}

}  // namespace dashsnap::platform
