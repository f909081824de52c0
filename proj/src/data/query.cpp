#include "dashsnap/data/query.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/expression.hpp"
#include "dashsnap/data/kernels.hpp"

namespace dashsnap {

QueryWarnings& QueryWarnings::operator+=(const QueryWarnings& o) {
  null_filtered += o.null_filtered;
  null_grouped += o.null_grouped;
  null_aggregated += o.null_aggregated;
  division_by_zero += o.division_by_zero;
  return *this;
}

std::optional<std::size_t> ResultTable::measure_index(std::string_view name) const {
  for (std::size_t i = 0; i < measure_names.size(); ++i) {
    if (measure_names[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> ResultTable::dimension_index(std::string_view name) const {
  for (std::size_t i = 0; i < dimension_names.size(); ++i) {
    if (dimension_names[i] == name) return i;
  }
  return std::nullopt;
}

const ResultTable::Row* ResultTable::find_row(std::size_t dim, std::string_view key) const {
  for (const auto& r : rows) {
    if (dim < r.keys.size() && display(r.keys[dim]) == key) return &r;
  }
  return nullptr;
}

Table apply_filters(const Table& t, std::span<const DataFilter> filters, QueryWarnings* warnings,
                    ExecutionPolicy policy) {
  if (filters.empty()) return t;
  auto bound = kernels::bind_filters(t, filters);
  auto mask = policy == ExecutionPolicy::Parallel ? kernels::filter_mask(t, bound, warnings)
                                                  : kernels::filter_mask_serial(t, bound, warnings);
  return t.select(mask);
}

Table apply_time_frame(const Table& t, const TimeFrame& tf, QueryWarnings* warnings, ExecutionPolicy policy) {
  auto col = t.require_column(tf.field);
  if (t.columns()[col].type != ColumnType::Date) {
    throw Error(Code::TemporalFieldRequired, "time frame field '" + tf.field + "' is not a date column");
  }
  auto mask = policy == ExecutionPolicy::Parallel
                  ? kernels::date_window_mask(t, col, tf.start, tf.end(), warnings)
                  : kernels::date_window_mask_serial(t, col, tf.start, tf.end(), warnings);
  return t.select(mask);
}

namespace {

struct Plan {
  std::vector<kernels::AggregateSpec> aggregates;
  // measure index -> aggregate slot, or nullopt for computed measures
  std::vector<std::optional<std::size_t>> slot;
  std::vector<std::optional<Expression>> expressions;
};

Plan plan_measures(const Table& t, std::span<const Measure> measures) {
  Plan p;
  for (const auto& m : measures) {
    if (m.kind == MeasureKind::Computed) {
      if (!m.expression) throw Error(Code::MeasureShape, "computed measure '" + m.name + "' has no expression");
      p.slot.push_back(std::nullopt);
      p.expressions.push_back(Expression::parse(*m.expression));
      continue;
    }
    if (!m.source_column) throw Error(Code::MeasureShape, "measure '" + m.name + "' has no source column");
    auto col = t.require_column(*m.source_column);
    auto op = m.kind == MeasureKind::Column ? Aggregate::Sum : m.aggregate.value_or(Aggregate::Sum);
    if (op != Aggregate::Count && t.columns()[col].type != ColumnType::Number) {
      throw Error(Code::TypeMismatch, "measure '" + m.name + "' needs a number column");
    }
    p.slot.push_back(p.aggregates.size());
    p.aggregates.push_back({col, op});
    p.expressions.push_back(std::nullopt);
  }
  return p;
}

/// Fills computed measures of one row in dependency order.
void compute_row(std::span<const Measure> measures, const Plan& plan, std::vector<std::optional<double>>& values,
                 QueryWarnings& warnings) {
  std::map<std::string, std::size_t, std::less<>> index;
  for (std::size_t i = 0; i < measures.size(); ++i) index.emplace(measures[i].name, i);
  std::vector<int> state(measures.size(), 0);  // 0 pending, 1 active, 2 done
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (plan.slot[i]) state[i] = 2;
  }
  std::function<std::optional<double>(std::size_t)> value_of = [&](std::size_t i) -> std::optional<double> {
    if (state[i] == 2) return values[i];
    if (state[i] == 1) throw Error(Code::CyclicMeasureRef, "measure '" + measures[i].name + "' depends on itself");
    state[i] = 1;
    auto outcome = plan.expressions[i]->evaluate([&](const std::string& name) -> std::optional<double> {
      auto it = index.find(name);
      if (it == index.end()) throw Error(Code::UnknownMeasureRef, "unknown measure '" + name + "'");
      return value_of(it->second);
    });
    if (outcome.division_by_zero) ++warnings.division_by_zero;
    values[i] = outcome.value;
    state[i] = 2;
    return values[i];
  };
  for (std::size_t i = 0; i < measures.size(); ++i) value_of(i);
}

}  // namespace

ResultTable evaluate(const Table& t, std::span<const Measure> measures, std::span<const Dimension> dims,
                     const EvaluateOptions& options) {
  ResultTable out;
  std::vector<std::size_t> key_cols;
  for (const auto& d : dims) {
    out.dimension_names.push_back(d.name);
    key_cols.push_back(t.require_column(d.source_column));
  }
  for (const auto& m : measures) out.measure_names.push_back(m.name);
  auto plan = plan_measures(t, measures);

  auto grouped = options.policy == ExecutionPolicy::Parallel
                     ? kernels::group_aggregate(t, key_cols, plan.aggregates)
                     : kernels::group_aggregate_serial(t, key_cols, plan.aggregates);
  if (dims.empty() && grouped.keys.empty()) {
    // A total over zero rows is still one row: counts are 0, the rest null.
    std::vector<std::optional<double>> total;
    for (const auto& a : plan.aggregates) {
      total.push_back(a.op == Aggregate::Count ? std::optional<double>(0.0) : std::nullopt);
    }
    grouped.keys.emplace_back();
    grouped.values.push_back(std::move(total));
  }
  out.warnings.null_grouped = grouped.null_key_rows;
  out.warnings.null_aggregated = grouped.null_value_cells;

  if (options.zero_fill && !dims.empty()) {
    std::vector<std::vector<Cell>> domains(dims.size());
    for (std::size_t d = 0; d < dims.size(); ++d) domains[d] = distinct_values(t, dims[d].source_column);
    std::vector<std::vector<Cell>> combos{{}};
    for (const auto& dom : domains) {
      std::vector<std::vector<Cell>> next;
      for (const auto& prefix : combos) {
        for (const auto& v : dom) {
          auto k = prefix;
          k.push_back(v);
          next.push_back(std::move(k));
        }
      }
      combos = std::move(next);
    }
    std::size_t gi = 0;
    kernels::GroupedAggregates filled;
    filled.null_key_rows = grouped.null_key_rows;
    filled.null_value_cells = grouped.null_value_cells;
    for (auto& k : combos) {
      bool present = gi < grouped.keys.size() && std::equal(k.begin(), k.end(), grouped.keys[gi].begin(),
                                                            [](const Cell& a, const Cell& b) {
                                                              return compare_cells(a, b) == 0;
                                                            });
      if (present) {
        filled.keys.push_back(std::move(grouped.keys[gi]));
        filled.values.push_back(std::move(grouped.values[gi]));
        ++gi;
      } else {
        std::vector<std::optional<double>> zeros;
        for (const auto& a : plan.aggregates) {
          bool additive = a.op == Aggregate::Sum || a.op == Aggregate::Count;
          zeros.push_back(additive ? std::optional<double>(0.0) : std::nullopt);
        }
        filled.keys.push_back(std::move(k));
        filled.values.push_back(std::move(zeros));
      }
    }
    grouped = std::move(filled);
  }

  out.rows.reserve(grouped.keys.size());
  for (std::size_t g = 0; g < grouped.keys.size(); ++g) {
    ResultTable::Row row;
    row.keys = std::move(grouped.keys[g]);
    row.values.resize(measures.size());
    for (std::size_t i = 0; i < measures.size(); ++i) {
      if (plan.slot[i]) row.values[i] = grouped.values[g][*plan.slot[i]];
    }
    compute_row(measures, plan, row.values, out.warnings);
    out.rows.push_back(std::move(row));
  }
  return out;
}

ResultTable evaluate_component(const Table& t, const ComponentSpec& c, std::span<const DataFilter> extra_filters,
                               ExecutionPolicy policy) {
  QueryWarnings w;
  std::vector<DataFilter> filters(c.data_filters.begin(), c.data_filters.end());
  filters.insert(filters.end(), extra_filters.begin(), extra_filters.end());
  auto filtered = apply_filters(t, filters, &w, policy);
  auto framed = apply_time_frame(filtered, c.time_frame, &w, policy);
  auto result = evaluate(framed, c.measures, c.dimensions, {false, policy});
  result.warnings += w;
  return result;
}

std::vector<Cell> distinct_values(const Table& t, std::string_view column) {
  auto col = t.require_column(column);
  std::vector<Cell> out;
  for (const auto& row : t.rows()) {
    if (!is_null(row[col])) out.push_back(row[col]);
  }
  std::sort(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return compare_cells(a, b) < 0; });
  out.erase(std::unique(out.begin(), out.end(), [](const Cell& a, const Cell& b) { return compare_cells(a, b) == 0; }),
            out.end());
  return out;
}

}  // namespace dashsnap
