#include "dashsnap/data/registry.hpp"

#include <fstream>
#include <sstream>

#include "dashsnap/core/error.hpp"
#include "dashsnap/data/csv.hpp"

namespace dashsnap {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Code::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table load_source(const FileSource& f) {
  std::optional<SchemaOverride> schema;
  if (f.schema_path) schema = parse_schema_sidecar(slurp(*f.schema_path));
  return load_table_text(slurp(f.csv_path), schema);
}

}  // namespace

DataSourceRegistry::DataSourceRegistry(const DataSourceRegistry& other) {
  std::lock_guard lock(other.mutex_);
  entries_ = other.entries_;
}

DataSourceRegistry& DataSourceRegistry::operator=(const DataSourceRegistry& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  entries_ = other.entries_;
  return *this;
}

void DataSourceRegistry::add_table(const std::string& id, Table table) {
  std::lock_guard lock(mutex_);
  entries_[id] = Entry{std::nullopt, std::make_shared<const Table>(std::move(table))};
}

void DataSourceRegistry::add_file(const FileSource& source) {
  std::lock_guard lock(mutex_);
  entries_[source.id] = Entry{source, nullptr};
}

void DataSourceRegistry::remove(const std::string& id) {
  std::lock_guard lock(mutex_);
  entries_.erase(id);
}

bool DataSourceRegistry::contains(std::string_view id) const {
  std::lock_guard lock(mutex_);
  return entries_.find(id) != entries_.end();
}

std::shared_ptr<const Table> DataSourceRegistry::resolve(std::string_view id) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) throw Error(Code::UnknownDataSource, "unknown data source '" + std::string(id) + "'");
  if (!it->second.table) it->second.table = std::make_shared<const Table>(load_source(*it->second.file));
  return it->second.table;
}

std::optional<DataSourceSchema> DataSourceRegistry::schema_of(std::string_view id) const {
  if (!contains(id)) return std::nullopt;
  return resolve(id)->schema();
}

std::vector<FileSource> DataSourceRegistry::file_sources() const {
  std::lock_guard lock(mutex_);
  std::vector<FileSource> out;
  for (const auto& [id, e] : entries_) {
    if (e.file) out.push_back(*e.file);
  }
  return out;
}

std::vector<std::string> DataSourceRegistry::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, e] : entries_) out.push_back(id);
  return out;
}

}  // namespace dashsnap
