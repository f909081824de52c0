#include "dashsnap/lifecycle/store.hpp"

#include "dashsnap/core/error.hpp"

namespace dashsnap::lifecycle {

namespace {

Error unknown(const std::string& id) { return Error(Code::UnknownSnapshot, "no snapshot '" + id + "'"); }

}  // namespace

void SnapshotStore::create(const SnapshotSpec& s, Timestamp published_at) {
  std::unique_lock lock(mutex_);
  if (entries_.count(s.id)) throw Error(Code::InvalidValue, "snapshot '" + s.id + "' already exists");
  if (s.version != 1) throw Error(Code::InvalidValue, "a new snapshot starts at version 1");
  entries_[s.id].versions.push_back({s, false, published_at});
}

void SnapshotStore::append(const SnapshotSpec& s, Timestamp published_at) {
  std::unique_lock lock(mutex_);
  auto it = entries_.find(s.id);
  if (it == entries_.end()) throw unknown(s.id);
  auto& versions = it->second.versions;
  if (s.version != versions.back().spec.version + 1) {
    throw Error(Code::InvalidValue, "snapshot '" + s.id + "' expects version " +
                                        std::to_string(versions.back().spec.version + 1) + ", got " +
                                        std::to_string(s.version));
  }
  versions.back().superseded = true;
  versions.push_back({s, false, published_at});
}

bool SnapshotStore::contains(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return entries_.count(id) > 0;
}

std::vector<std::string> SnapshotStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : entries_) out.push_back(id);
  return out;
}

StoredVersion SnapshotStore::latest(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw unknown(id);
  return it->second.versions.back();
}

StoredVersion SnapshotStore::version(const std::string& id, int version) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw unknown(id);
  for (const auto& v : it->second.versions) {
    if (v.spec.version == version) return v;
  }
  throw Error(Code::NotFound, "snapshot '" + id + "' has no version " + std::to_string(version));
}

std::vector<StoredVersion> SnapshotStore::history(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw unknown(id);
  return it->second.versions;
}

std::mutex& SnapshotStore::update_lock(const std::string& id) {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw unknown(id);
  return *it->second.lock;
}

void SnapshotStore::restore(const std::vector<StoredVersion>& versions) {
  std::unique_lock lock(mutex_);
  entries_.clear();
  for (const auto& v : versions) entries_[v.spec.id].versions.push_back(v);
}

std::vector<StoredVersion> SnapshotStore::all_versions() const {
  std::shared_lock lock(mutex_);
  std::vector<StoredVersion> out;
  for (const auto& [_, e] : entries_) out.insert(out.end(), e.versions.begin(), e.versions.end());
  return out;
}

}  // namespace dashsnap::lifecycle
