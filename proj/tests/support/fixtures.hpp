#pragma once

#include <optional>
#include <string>

#include "dashsnap/core/error.hpp"
#include "dashsnap/core/model.hpp"
#include "dashsnap/core/validation.hpp"
#include "dashsnap/data/table.hpp"

namespace dashsnap::testing {

/// Order Date (date), Category (string), Region (string), Sales, Profit (number)
DataSourceSchema superstore_schema();

/// Small hand-checkable table over the superstore columns.
Table tiny_sales_table();

/// The sales-by-category component: sum(Sales) by Category, 1 month from
/// 2022-03-02 on Order Date, bar chart.
ComponentSpec sales_component(const std::string& id = "sales");

/// Profit Ratio = sum(Profit) / sum(Sales), as a text-metric.
ComponentSpec profit_ratio_component(const std::string& id = "ratio");

/// Monthly sales over time by Order Date (line chart, temporal dimension).
ComponentSpec sales_trend_component(const std::string& id = "trend");

SnapshotSpec demo_snapshot();

/// Code of the dashsnap::Error thrown by `f`, or nullopt when it returns.
template <class F>
std::optional<Code> thrown_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string read_file(const std::string& path);
std::string source_path(const std::string& relative);

}  // namespace dashsnap::testing
