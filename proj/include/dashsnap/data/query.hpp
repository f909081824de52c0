#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dashsnap/core/model.hpp"
#include "dashsnap/data/table.hpp"

namespace dashsnap {

/// Rows dropped or cells skipped because of nulls, plus division-by-zero
/// events in computed measures. Surfaced with results for transparency.
struct QueryWarnings {
  std::size_t null_filtered = 0;
  std::size_t null_grouped = 0;
  std::size_t null_aggregated = 0;
  std::size_t division_by_zero = 0;

  std::size_t total() const { return null_filtered + null_grouped + null_aggregated + division_by_zero; }
  QueryWarnings& operator+=(const QueryWarnings& o);

  friend bool operator==(const QueryWarnings&, const QueryWarnings&) = default;
};

enum class ExecutionPolicy { Parallel, Serial };

/// Conjunction of all filters; order preserved. Range bounds are inclusive,
/// date ranges half-open. Rows with a null in a filtered column never match.
/// Throws Error(UnknownColumn).
Table apply_filters(const Table& t, std::span<const DataFilter> filters, QueryWarnings* warnings = nullptr,
                    ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Rows with start <= field < end. Throws Error(UnknownColumn |
/// TemporalFieldRequired).
Table apply_time_frame(const Table& t, const TimeFrame& tf, QueryWarnings* warnings = nullptr,
                       ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Measures broken down by dimension values, one row per distinct key
/// combination, sorted by key.
struct ResultTable {
  struct Row {
    std::vector<Cell> keys;
    std::vector<std::optional<double>> values;

    friend bool operator==(const Row&, const Row&) = default;
  };

  std::vector<std::string> dimension_names;
  std::vector<std::string> measure_names;
  std::vector<Row> rows;
  QueryWarnings warnings;

  bool empty() const { return rows.empty(); }
  std::optional<std::size_t> measure_index(std::string_view name) const;
  std::optional<std::size_t> dimension_index(std::string_view name) const;
  /// First row whose key in dimension `dim` displays as `key`.
  const Row* find_row(std::size_t dim, std::string_view key) const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

struct EvaluateOptions {
  /// Materialize every combination of observed dimension values; absent
  /// groups get sum/count 0 and null avg/min/max.
  bool zero_fill = false;
  ExecutionPolicy policy = ExecutionPolicy::Parallel;
};

/// Group by `dims`; aggregated and column measures are computed over rows
/// (column measures sum), computed measures are evaluated on the aggregated
/// values of the measures they reference. No dimensions yields one total
/// row. Division by zero produces a null cell and a warning.
ResultTable evaluate(const Table& t, std::span<const Measure> measures, std::span<const Dimension> dims,
                     const EvaluateOptions& options = {});

/// Full component pipeline: filters, then time frame, then evaluate.
ResultTable evaluate_component(const Table& t, const ComponentSpec& c,
                               std::span<const DataFilter> extra_filters = {},
                               ExecutionPolicy policy = ExecutionPolicy::Parallel);

/// Distinct non-null values of a column, sorted.
std::vector<Cell> distinct_values(const Table& t, std::string_view column);

}  // namespace dashsnap
