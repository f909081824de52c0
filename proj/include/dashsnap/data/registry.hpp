#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dashsnap/core/validation.hpp"
#include "dashsnap/data/table.hpp"

namespace dashsnap {

/// Where a file-backed source lives; kept so stores can be persisted.
struct FileSource {
  std::string id;
  std::string csv_path;
  std::optional<std::string> schema_path;

  friend bool operator==(const FileSource&, const FileSource&) = default;
};

/// Resolves data-source ids to tables. File sources load lazily and are
/// cached; safe for concurrent resolve() calls.
class DataSourceRegistry : public SchemaResolver {
 public:
  DataSourceRegistry() = default;
  DataSourceRegistry(const DataSourceRegistry& other);
  DataSourceRegistry& operator=(const DataSourceRegistry& other);

  void add_table(const std::string& id, Table table);
  void add_file(const FileSource& source);
  void remove(const std::string& id);
  bool contains(std::string_view id) const;

  /// Throws Error(UnknownDataSource), Error(Io) or a CSV error.
  std::shared_ptr<const Table> resolve(std::string_view id) const;
  std::optional<DataSourceSchema> schema_of(std::string_view id) const override;

  std::vector<FileSource> file_sources() const;
  std::vector<std::string> ids() const;

 private:
  struct Entry {
    std::optional<FileSource> file;
    mutable std::shared_ptr<const Table> table;
  };
  mutable std::mutex mutex_;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace dashsnap
