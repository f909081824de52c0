#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "dashsnap/core/model.hpp"

namespace dashsnap::lifecycle {

struct StoredVersion {
  SnapshotSpec spec;
  bool superseded = false;
  /// When this version went out; for auto updates the scheduled instant.
  Timestamp published_at;

  friend bool operator==(const StoredVersion&, const StoredVersion&) = default;
};

/// Every version of every snapshot. Old versions are kept and marked
/// superseded. Readers get copies; all members are thread-safe.
class SnapshotStore {
 public:
  /// Throws Error(InvalidValue) when the id exists or the version is not 1.
  void create(const SnapshotSpec& s, Timestamp published_at);
  /// Appends version latest+1 and supersedes the previous one.
  /// Throws Error(UnknownSnapshot) or Error(InvalidValue).
  void append(const SnapshotSpec& s, Timestamp published_at);

  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;
  /// Throw Error(UnknownSnapshot).
  StoredVersion latest(const std::string& id) const;
  StoredVersion version(const std::string& id, int version) const;
  std::vector<StoredVersion> history(const std::string& id) const;

  /// Held by whoever updates a snapshot, so a scheduled update and a
  /// manual one never interleave.
  std::mutex& update_lock(const std::string& id);

  /// Rebuilds from persisted versions (oldest first per snapshot).
  void restore(const std::vector<StoredVersion>& versions);
  std::vector<StoredVersion> all_versions() const;

 private:
  struct Entry {
    std::vector<StoredVersion> versions;
    std::unique_ptr<std::mutex> lock = std::make_unique<std::mutex>();
  };
  mutable std::shared_mutex mutex_;
  std::map<std::string, Entry> entries_;
};

}  // namespace dashsnap::lifecycle
