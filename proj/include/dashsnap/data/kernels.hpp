#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/query.hpp"
#include "dashsnap/data/table.hpp"

/// Data-parallel building blocks behind the query operations. Each kernel
/// has an OpenMP version and a `_serial` reference; both produce identical
/// output, including floating-point sums, because accumulation always
/// follows row order within a group.
namespace dashsnap::kernels {

struct FilterColumn {
  std::size_t column;
  ColumnType type;
  const Predicate* predicate;
};

/// Resolves filter columns and coerces literals; throws Error(UnknownColumn).
std::vector<DataFilter> bind_filters(const Table& t, std::span<const DataFilter> filters);

std::vector<unsigned char> filter_mask(const Table& t, std::span<const DataFilter> bound, QueryWarnings* w);
std::vector<unsigned char> filter_mask_serial(const Table& t, std::span<const DataFilter> bound,
                                              QueryWarnings* w);

std::vector<unsigned char> date_window_mask(const Table& t, std::size_t column, Date start, Date end,
                                            QueryWarnings* w);
std::vector<unsigned char> date_window_mask_serial(const Table& t, std::size_t column, Date start, Date end,
                                                   QueryWarnings* w);

struct AggregateSpec {
  std::size_t column = 0;
  Aggregate op = Aggregate::Sum;
};

struct GroupedAggregates {
  std::vector<std::vector<Cell>> keys;                  // one per group, sorted
  std::vector<std::vector<std::optional<double>>> values;  // group x aggregate
  std::size_t null_key_rows = 0;
  std::size_t null_value_cells = 0;

  friend bool operator==(const GroupedAggregates&, const GroupedAggregates&) = default;
};

GroupedAggregates group_aggregate(const Table& t, std::span<const std::size_t> key_columns,
                                  std::span<const AggregateSpec> aggregates);
GroupedAggregates group_aggregate_serial(const Table& t, std::span<const std::size_t> key_columns,
                                         std::span<const AggregateSpec> aggregates);

/// Tables smaller than this run the serial path even when the parallel
/// kernel is requested. Default 4096 rows.
void set_parallel_threshold(std::size_t rows);
std::size_t parallel_threshold();

/// Matching used by both filter kernels.
bool matches(const Cell& cell, const Predicate& p);

}  // namespace dashsnap::kernels
