#include "support/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dashsnap::testing {

DataSourceSchema superstore_schema() {
  return {{{"Order Date", ColumnType::Date},
           {"Category", ColumnType::String},
           {"Region", ColumnType::String},
           {"Sales", ColumnType::Number},
           {"Profit", ColumnType::Number}}};
}

Table tiny_sales_table() {
  auto d = [](const char* iso) { return Cell{Date::from_iso(iso)}; };
  auto s = [](const char* v) { return Cell{std::string(v)}; };
  auto n = [](double v) { return Cell{v}; };
  std::vector<Column> cols{{"Order Date", ColumnType::Date},
                           {"Category", ColumnType::String},
                           {"Region", ColumnType::String},
                           {"Sales", ColumnType::Number},
                           {"Profit", ColumnType::Number}};
  // In the March frame [2022-03-02, 2022-04-02): Furniture 10+20, Technology 5.
  std::vector<Row> rows{
      {d("2022-02-20"), s("Office Supplies"), s("East"), n(9), n(1)},
      {d("2022-03-01"), s("Furniture"), s("West"), n(100), n(10)},
      {d("2022-03-02"), s("Furniture"), s("West"), n(10), n(2)},
      {d("2022-03-15"), s("Furniture"), s("East"), n(20), n(-1)},
      {d("2022-03-20"), s("Technology"), s("West"), n(5), n(1)},
      {d("2022-04-02"), s("Technology"), s("East"), n(7), n(2)},
      {d("2022-04-05"), s("Office Supplies"), s("East"), n(3), n(0.5)},
      {d("2022-04-10"), s("Furniture"), s("West"), n(40), n(4)},
      {d("2022-05-03"), s("Technology"), s("West"), n(12), n(3)},
  };
  return Table(std::move(cols), std::move(rows));
}

ComponentSpec sales_component(const std::string& id) {
  ComponentSpec c;
  c.id = id;
  c.panel = "sales-by-category";
  c.worksheet = "Sales by Category";
  c.data_source = "superstore";
  c.measures = {{"Sales", MeasureKind::Aggregated, "Sales", Aggregate::Sum, std::nullopt, "USD"}};
  c.dimensions = {{"Category", "Category", DimensionKind::Nominal}};
  c.time_frame = {"Order Date", Date(2022, 3, 2), {1, DurationUnit::Month}};
  c.original_design.mark = Mark::Bar;
  c.original_design.encodings = {{"x", "Sales"}, {"y", "Category"}};
  return c;
}

ComponentSpec profit_ratio_component(const std::string& id) {
  ComponentSpec c;
  c.id = id;
  c.panel = "profit-ratio";
  c.data_source = "superstore";
  c.measures = {{"Sales", MeasureKind::Aggregated, "Sales", Aggregate::Sum, std::nullopt, std::nullopt},
                {"Profit", MeasureKind::Aggregated, "Profit", Aggregate::Sum, std::nullopt, std::nullopt},
                {"Profit Ratio", MeasureKind::Computed, std::nullopt, std::nullopt, "Profit / Sales", std::nullopt}};
  c.time_frame = {"Order Date", Date(2022, 3, 2), {1, DurationUnit::Month}};
  c.original_design.mark = Mark::TextMetric;
  c.original_design.encodings = {{"y", "Profit Ratio"}};
  return c;
}

ComponentSpec sales_trend_component(const std::string& id) {
  ComponentSpec c;
  c.id = id;
  c.panel = "sales-trend";
  c.data_source = "superstore";
  c.measures = {{"Sales", MeasureKind::Aggregated, "Sales", Aggregate::Sum, std::nullopt, std::nullopt}};
  c.dimensions = {{"Order Date", "Order Date", DimensionKind::Temporal}};
  c.time_frame = {"Order Date", Date(2022, 1, 1), {3, DurationUnit::Month}};
  c.original_design.mark = Mark::Line;
  c.original_design.encodings = {{"x", "Order Date"}, {"y", "Sales"}};
  return c;
}

SnapshotSpec demo_snapshot() {
  SnapshotSpec s;
  s.id = "march-sales";
  s.title = "March sales";
  s.components = {sales_component(), profit_ratio_component(), sales_trend_component()};
  s.curation = StackCuration{};
  s.freshness = Date(2022, 5, 2);
  s.update_policy = RecurrenceRule{{1, DurationUnit::Month}, Date(2022, 12, 31), {9, 0}};
  s.created_at = Timestamp::parse("2022-03-02T08:00:00").value();
  s.author = "ana";
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string source_path(const std::string& relative) { return std::string(DASHSNAP_SOURCE_DIR) + "/" + relative; }

}  // namespace dashsnap::testing
