#include <map>

#include "dashsnap/data/kernels.hpp"
#include "kernels_common.hpp"

namespace dashsnap::kernels {

std::vector<unsigned char> filter_mask_serial(const Table& t, std::span<const DataFilter> bound,
                                              QueryWarnings* w) {
  std::vector<std::size_t> cols;
  for (const auto& f : bound) cols.push_back(t.require_column(f.column));
  std::vector<unsigned char> mask(t.row_count(), 1);
  std::size_t nulls = 0;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    const auto& row = t.rows()[r];
    bool keep = true, null_hit = false;
    for (std::size_t i = 0; i < bound.size(); ++i) {
      const Cell& cell = row[cols[i]];
      if (is_null(cell)) {
        null_hit = true;
        keep = false;
      } else if (!matches(cell, bound[i].predicate)) {
        keep = false;
      }
    }
    mask[r] = keep;
    if (null_hit) ++nulls;
  }
  if (w) w->null_filtered += nulls;
  return mask;
}

std::vector<unsigned char> date_window_mask_serial(const Table& t, std::size_t column, Date start, Date end,
                                                   QueryWarnings* w) {
  std::vector<unsigned char> mask(t.row_count(), 0);
  std::size_t nulls = 0;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    const auto* d = std::get_if<Date>(&t.rows()[r][column]);
    if (!d) {
      ++nulls;
      continue;
    }
    mask[r] = start <= *d && *d < end;
  }
  if (w) w->null_filtered += nulls;
  return mask;
}

GroupedAggregates group_aggregate_serial(const Table& t, std::span<const std::size_t> key_columns,
                                         std::span<const AggregateSpec> aggregates) {
  using detail::Accumulator;
  std::map<std::vector<Cell>, std::vector<Accumulator>, detail::KeyLess> groups;
  GroupedAggregates out;
  std::vector<Cell> key;
  for (const auto& row : t.rows()) {
    if (!detail::row_key(row, key_columns, key)) {
      ++out.null_key_rows;
      continue;
    }
    auto [it, inserted] = groups.try_emplace(key, aggregates.size());
    for (std::size_t a = 0; a < aggregates.size(); ++a) {
      it->second[a].add_row(row[aggregates[a].column], out.null_value_cells, aggregates[a].op);
    }
  }
  for (const auto& [k, accs] : groups) {
    out.keys.push_back(k);
    std::vector<std::optional<double>> vals;
    for (std::size_t a = 0; a < aggregates.size(); ++a) vals.push_back(accs[a].result(aggregates[a].op));
    out.values.push_back(std::move(vals));
  }
  return out;
}

}  // namespace dashsnap::kernels
