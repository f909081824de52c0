#include <mutex>

#include "dashsnap/core/error.hpp"
#include "dashsnap/platform/platform.hpp"
#include "dashsnap/spec_io/spec_io.hpp"

namespace dashsnap::platform {

using nlohmann::json;

namespace {

json scalar_json(const Scalar& s) {
  if (const auto* d = std::get_if<double>(&s)) return *d;
  if (const auto* t = std::get_if<std::string>(&s)) return *t;
  return json{{"date", std::get<Date>(s).iso()}};
}

Scalar scalar_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  return Date::from_iso(j.at("date").get<std::string>());
}

json choice_json(const FilterChoice& choice) {
  if (const auto* d = std::get_if<DropdownChoice>(&choice)) {
    json values = json::array();
    for (const auto& v : d->values) values.push_back(scalar_json(v));
    return {{"kind", "dropdown"}, {"column", d->column}, {"values", values}};
  }
  if (const auto* s = std::get_if<SliderChoice>(&choice)) {
    return {{"kind", "slider"}, {"column", s->column}, {"min", s->min}, {"max", s->max}};
  }
  return {{"kind", "macro"}, {"name", std::get<MacroChoice>(choice).name}};
}

FilterChoice choice_from(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind == "dropdown") {
    DropdownChoice d{j.at("column").get<std::string>(), {}};
    for (const auto& v : j.at("values")) d.values.push_back(scalar_from(v));
    return d;
  }
  if (kind == "slider") {
    return SliderChoice{j.at("column").get<std::string>(), j.at("min").get<double>(), j.at("max").get<double>()};
  }
  if (kind == "macro") return MacroChoice{j.at("name").get<std::string>()};
  throw Error(Code::StoreCorrupt, "unknown filter choice kind '" + kind + "'");
}

Message message_from(const json& j) {
  Message m;
  m.id = j.at("id").get<std::string>();
  m.channel_id = j.at("channel").get<std::string>();
  if (!j.at("thread-root").is_null()) m.thread_root = j.at("thread-root").get<std::string>();
  m.author = j.at("author").get<std::string>();
  m.timestamp = Timestamp::from_iso(j.at("timestamp").get<std::string>());
  m.reactions = j.at("reactions").get<std::map<std::string, int>>();
  if (j.contains("snapshot")) {
    m.body = SnapshotRef{j.at("snapshot").at("id").get<std::string>(), j.at("snapshot").at("version").get<int>()};
  } else {
    m.body = j.at("text").get<std::string>();
  }
  return m;
}

}  // namespace

json Platform::to_json() const {
  std::shared_lock lock(mutex_);
  json channels = json::array();
  for (const auto& [_, c] : channels_) {
    channels.push_back({{"id", c.id}, {"name", c.name}, {"members", c.members}});
  }
  json messages = json::array();
  for (const auto& m : messages_) messages.push_back(platform::to_json(m));
  json snapshots = json::array();
  for (const auto& v : store_.all_versions()) {
    snapshots.push_back({{"spec", spec_io::serialize_snapshot(v.spec)},
                         {"superseded", v.superseded},
                         {"published-at", v.published_at.iso()}});
  }
  json renders = json::object();
  for (const auto& [id, r] : renders_) renders[id] = lifecycle::to_json(r);

  json viewers = json::array();
  {
    std::shared_lock vlock(viewer_mutex_);
    for (const auto& [key, state] : viewer_states_) {
      for (const auto& [component, by_key] : state) {
        json choices = json::array();
        for (const auto& [_, choice] : by_key) choices.push_back(choice_json(choice));
        viewers.push_back(
            {{"viewer", key.first}, {"message", key.second}, {"component", component}, {"choices", choices}});
      }
    }
  }
  return {{"channels", channels},     {"messages", messages},           {"snapshots", snapshots},
          {"renders", renders},       {"viewer-states", viewers},       {"next-message", next_message_}};
}

void Platform::load_json(const json& j) {
  lifecycle::SnapshotStore store;
  std::map<std::string, Channel> channels;
  std::vector<Message> messages;
  std::map<std::string, std::size_t> index;
  std::map<std::string, SnapshotRender> renders;
  std::map<ViewerKey, ComponentChoices> viewers;
  std::size_t next = 1;
  try {
    for (const auto& c : j.at("channels")) {
      Channel ch{c.at("id").get<std::string>(), c.at("name").get<std::string>(),
                 c.at("members").get<std::vector<std::string>>()};
      channels[ch.id] = ch;
    }
    std::vector<lifecycle::StoredVersion> versions;
    for (const auto& s : j.at("snapshots")) {
      auto doc = spec_io::parse_document(s.at("spec").get<std::string>());
      if (!doc.is_snapshot()) throw Error(Code::StoreCorrupt, "stored spec is not a snapshot");
      versions.push_back({std::get<SnapshotSpec>(doc.parsed), s.at("superseded").get<bool>(),
                          Timestamp::from_iso(s.at("published-at").get<std::string>())});
    }
    store.restore(versions);
    for (const auto& m : j.at("messages")) {
      auto msg = message_from(m);
      if (!channels.count(msg.channel_id)) throw Error(Code::StoreCorrupt, "message in unknown channel");
      if (msg.thread_root && !index.count(*msg.thread_root)) {
        throw Error(Code::StoreCorrupt, "reply " + msg.id + " to unknown thread");
      }
      if (const auto* ref = msg.snapshot()) store.version(ref->snapshot_id, ref->version);
      index[msg.id] = messages.size();
      messages.push_back(std::move(msg));
    }
    for (const auto& [id, r] : j.at("renders").items()) {
      if (!index.count(id)) throw Error(Code::StoreCorrupt, "render for unknown message " + id);
      renders[id] = lifecycle::render_from_json(r);
    }
    for (const auto& v : j.at("viewer-states")) {
      auto& by_key = viewers[{v.at("viewer").get<std::string>(), v.at("message").get<std::string>()}]
                            [v.at("component").get<std::string>()];
      for (const auto& c : v.at("choices")) {
        auto choice = choice_from(c);
        by_key[choice_key(choice)] = choice;
      }
    }
    next = j.at("next-message").get<std::size_t>();
  } catch (const json::exception& e) {
    throw Error(Code::StoreCorrupt, std::string("malformed store: ") + e.what());
  } catch (const spec_io::ParseError& e) {
    throw Error(Code::StoreCorrupt, std::string("stored spec does not parse: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Code::StoreCorrupt) throw;
    throw Error(Code::StoreCorrupt, e.what());
  }

  std::unique_lock lock(mutex_);
  std::unique_lock vlock(viewer_mutex_);
  store_.restore(store.all_versions());
  channels_ = std::move(channels);
  messages_ = std::move(messages);
  message_index_ = std::move(index);
  renders_ = std::move(renders);
  viewer_states_ = std::move(viewers);
  next_message_ = next;
}

}  // namespace dashsnap::platform
