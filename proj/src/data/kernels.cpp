#include "dashsnap/data/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <unordered_map>

#include <omp.h>

#include "dashsnap/core/error.hpp"
#include "kernels_common.hpp"

namespace dashsnap::kernels {

namespace {

// Below this many rows the OpenMP fork costs more than the loop.
std::atomic<std::size_t> g_parallel_threshold{4096};

Scalar bind_literal(const Scalar& v, ColumnType type, const std::string& column) {
  auto c = coerce(v, type);
  if (!c) {
    throw Error(Code::FilterTypeMismatch,
                "value '" + display(v) + "' does not fit " + std::string(type_name(type)) + " column '" + column + "'");
  }
  return *c;
}

}  // namespace

void set_parallel_threshold(std::size_t rows) { g_parallel_threshold.store(rows); }
std::size_t parallel_threshold() { return g_parallel_threshold.load(); }

bool matches(const Cell& cell, const Predicate& p) {
  return std::visit(
      [&](const auto& pred) -> bool {
        using T = std::decay_t<decltype(pred)>;
        if constexpr (std::is_same_v<T, EqualsPredicate>) {
          return compare_cells(cell, to_cell(pred.value)) == 0;
        } else if constexpr (std::is_same_v<T, OneOfPredicate>) {
          return std::any_of(pred.values.begin(), pred.values.end(),
                             [&](const Scalar& v) { return compare_cells(cell, to_cell(v)) == 0; });
        } else if constexpr (std::is_same_v<T, RangePredicate>) {
          const auto* d = std::get_if<double>(&cell);
          return d && pred.min <= *d && *d <= pred.max;
        } else {
          const auto* d = std::get_if<Date>(&cell);
          return d && pred.start <= *d && *d < pred.end;
        }
      },
      p);
}

std::vector<DataFilter> bind_filters(const Table& t, std::span<const DataFilter> filters) {
  std::vector<DataFilter> bound;
  bound.reserve(filters.size());
  for (const auto& f : filters) {
    auto type = t.columns()[t.require_column(f.column)].type;
    DataFilter b{f.column, f.predicate};
    std::visit(
        [&](auto& pred) {
          using T = std::decay_t<decltype(pred)>;
          if constexpr (std::is_same_v<T, EqualsPredicate>) {
            pred.value = bind_literal(pred.value, type, f.column);
          } else if constexpr (std::is_same_v<T, OneOfPredicate>) {
            for (auto& v : pred.values) v = bind_literal(v, type, f.column);
          } else if constexpr (std::is_same_v<T, RangePredicate>) {
            if (type != ColumnType::Number) {
              throw Error(Code::FilterTypeMismatch, "range filter on non-numeric column '" + f.column + "'");
            }
          } else {
            if (type != ColumnType::Date) {
              throw Error(Code::FilterTypeMismatch, "date-range filter on non-date column '" + f.column + "'");
            }
          }
        },
        b.predicate);
    bound.push_back(std::move(b));
  }
  return bound;
}

std::vector<unsigned char> filter_mask(const Table& t, std::span<const DataFilter> bound, QueryWarnings* w) {
  const std::size_t n = t.row_count();
  if (n < g_parallel_threshold.load()) return filter_mask_serial(t, bound, w);
  std::vector<std::size_t> cols;
  for (const auto& f : bound) cols.push_back(t.require_column(f.column));
  std::vector<unsigned char> mask(n, 1);
  std::size_t nulls = 0;
  const auto& rows = t.rows();
#pragma omp parallel for schedule(static) reduction(+ : nulls)
  for (std::size_t r = 0; r < n; ++r) {
    bool keep = true, null_hit = false;
    for (std::size_t i = 0; i < bound.size(); ++i) {
      const Cell& cell = rows[r][cols[i]];
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

std::vector<unsigned char> date_window_mask(const Table& t, std::size_t column, Date start, Date end,
                                            QueryWarnings* w) {
  const std::size_t n = t.row_count();
  if (n < g_parallel_threshold.load()) return date_window_mask_serial(t, column, start, end, w);
  std::vector<unsigned char> mask(n, 0);
  std::size_t nulls = 0;
  const auto& rows = t.rows();
#pragma omp parallel for schedule(static) reduction(+ : nulls)
  for (std::size_t r = 0; r < n; ++r) {
    const auto* d = std::get_if<Date>(&rows[r][column]);
    if (!d) {
      ++nulls;
      continue;
    }
    mask[r] = start <= *d && *d < end;
  }
  if (w) w->null_filtered += nulls;
  return mask;
}

GroupedAggregates group_aggregate(const Table& t, std::span<const std::size_t> key_columns,
                                  std::span<const AggregateSpec> aggregates) {
  using detail::Accumulator;
  const std::size_t n = t.row_count();
  if (n < g_parallel_threshold.load()) return group_aggregate_serial(t, key_columns, aggregates);
  const auto& rows = t.rows();

  // Phase 1: each thread assigns chunk-local group ids over a contiguous
  // row range.
  using LocalMap = std::unordered_map<std::vector<Cell>, std::size_t, detail::KeyHash, detail::KeyEq>;
  const int threads = omp_get_max_threads();
  std::vector<LocalMap> local_maps(threads);
  std::vector<std::vector<std::vector<Cell>>> local_keys(threads);
  std::vector<std::ptrdiff_t> row_group(n, -1);
  std::size_t null_keys = 0;

#pragma omp parallel num_threads(threads) reduction(+ : null_keys)
  {
    const int tid = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::size_t begin = n * tid / nt;
    const std::size_t end = n * (tid + 1) / nt;
    auto& map = local_maps[tid];
    auto& keys = local_keys[tid];
    std::vector<Cell> key;
    for (std::size_t r = begin; r < end; ++r) {
      if (!detail::row_key(rows[r], key_columns, key)) {
        ++null_keys;
        continue;
      }
      auto [it, inserted] = map.try_emplace(key, keys.size());
      if (inserted) keys.push_back(key);
      row_group[r] = static_cast<std::ptrdiff_t>(it->second);
    }
  }

  // Phase 2: merge local ids into global ids in chunk order.
  LocalMap global;
  std::vector<std::vector<Cell>> global_keys;
  std::vector<std::vector<std::size_t>> remap(threads);
  for (int tid = 0; tid < threads; ++tid) {
    remap[tid].resize(local_keys[tid].size());
    for (std::size_t i = 0; i < local_keys[tid].size(); ++i) {
      auto [it, inserted] = global.try_emplace(local_keys[tid][i], global_keys.size());
      if (inserted) global_keys.push_back(local_keys[tid][i]);
      remap[tid][i] = it->second;
    }
  }
#pragma omp parallel num_threads(threads)
  {
    const int tid = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::size_t begin = n * tid / nt;
    const std::size_t end = n * (tid + 1) / nt;
    for (std::size_t r = begin; r < end; ++r) {
      if (row_group[r] >= 0) row_group[r] = static_cast<std::ptrdiff_t>(remap[tid][row_group[r]]);
    }
  }

  // Phase 3: bucket row indices per group (counting sort keeps row order).
  const std::size_t groups = global_keys.size();
  std::vector<std::size_t> offsets(groups + 1, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (row_group[r] >= 0) ++offsets[row_group[r] + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<std::size_t> members(offsets.back());
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (row_group[r] >= 0) members[cursor[row_group[r]]++] = r;
    }
  }

  // Phase 4: fold each group in row order, groups in parallel.
  std::vector<std::vector<std::optional<double>>> values(groups);
  std::size_t null_cells = 0;
  const auto group_count = static_cast<std::ptrdiff_t>(groups);
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : null_cells)
  for (std::ptrdiff_t g = 0; g < group_count; ++g) {
    std::vector<std::optional<double>> vals(aggregates.size());
    for (std::size_t a = 0; a < aggregates.size(); ++a) {
      Accumulator acc;
      for (std::size_t i = offsets[g]; i < offsets[g + 1]; ++i) {
        acc.add_row(rows[members[i]][aggregates[a].column], null_cells, aggregates[a].op);
      }
      vals[a] = acc.result(aggregates[a].op);
    }
    values[g] = std::move(vals);
  }

  std::vector<std::size_t> order(groups);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return detail::KeyLess{}(global_keys[a], global_keys[b]); });

  GroupedAggregates out;
  out.null_key_rows = null_keys;
  out.null_value_cells = null_cells;
  out.keys.reserve(groups);
  out.values.reserve(groups);
  for (auto g : order) {
    out.keys.push_back(std::move(global_keys[g]));
    out.values.push_back(std::move(values[g]));
  }
  return out;
}

}  // namespace dashsnap::kernels
