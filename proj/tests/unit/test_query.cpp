#include "doctest.h"
#include "support/fixtures.hpp"

#include "dashsnap/data/query.hpp"

using namespace dashsnap;
using namespace dashsnap::testing;

namespace {

Table three_rows() {
  return Table({{"Category", ColumnType::String}, {"Sales", ColumnType::Number}, {"Profit", ColumnType::Number}},
               {{Cell{std::string("Furniture")}, Cell{10.0}, Cell{2.0}},
                {Cell{std::string("Technology")}, Cell{5.0}, Cell{1.0}},
                {Cell{std::string("Furniture")}, Cell{20.0}, Cell{3.0}}});
}

Measure agg(const std::string& name, const std::string& col, Aggregate a) {
  return {name, MeasureKind::Aggregated, col, a, std::nullopt, std::nullopt};
}

}  // namespace

TEST_CASE("equality filter") {
  auto t = apply_filters(three_rows(), std::vector<DataFilter>{{"Category", EqualsPredicate{std::string("Furniture")}}});
  CHECK(t.row_count() == 2);
  CHECK(apply_filters(three_rows(), {}) == three_rows());
}

TEST_CASE("range filter is inclusive") {
  Table t({{"Sales", ColumnType::Number}}, {{Cell{5.0}}, {Cell{50.0}}, {Cell{10.0}}, {Cell{0.0}}});
  auto r = apply_filters(t, std::vector<DataFilter>{{"Sales", RangePredicate{0, 10}}});
  CHECK(r.row_count() == 3);
  CHECK(r.at(0, 0) == Cell{5.0});
}

TEST_CASE("filter errors and nulls") {
  CHECK(thrown_code([] {
          apply_filters(three_rows(), std::vector<DataFilter>{{"Region", EqualsPredicate{std::string("x")}}});
        }) == Code::UnknownColumn);
  CHECK(thrown_code([] {
          apply_filters(three_rows(), std::vector<DataFilter>{{"Sales", EqualsPredicate{std::string("x")}}});
        }) == Code::FilterTypeMismatch);
  Table t({{"c", ColumnType::String}}, {{Cell{}}, {Cell{std::string("a")}}});
  QueryWarnings w;
  auto r = apply_filters(t, std::vector<DataFilter>{{"c", OneOfPredicate{{std::string("a")}}}}, &w);
  CHECK(r.row_count() == 1);
  CHECK(w.null_filtered == 1);
}

TEST_CASE("time frame is half-open") {
  auto t = tiny_sales_table();
  auto r = apply_time_frame(t, {"Order Date", Date(2022, 3, 2), {1, DurationUnit::Month}});
  CHECK(r.row_count() == 3);
  std::vector<Date> dates;
  for (const auto& row : r.rows()) dates.push_back(std::get<Date>(row[0]));
  CHECK(dates.front() == Date(2022, 3, 2));
  CHECK(dates.back() == Date(2022, 3, 20));
  CHECK(apply_time_frame(t, {"Order Date", Date(2000, 1, 1), {50, DurationUnit::Year}}) == t);
  CHECK(apply_time_frame(Table(t.columns(), {}), {"Order Date", Date(2022, 3, 2), {1, DurationUnit::Month}})
            .row_count() == 0);
  CHECK(thrown_code([&] { apply_time_frame(t, {"Category", Date(2022, 3, 2), {1, DurationUnit::Month}}); }) ==
        Code::TemporalFieldRequired);
}

TEST_CASE("time frames partition") {
  auto t = tiny_sales_table();
  Date d(2022, 3, 2);
  auto a = apply_time_frame(t, {"Order Date", d, {1, DurationUnit::Month}});
  auto b = apply_time_frame(t, {"Order Date", add(d, {1, DurationUnit::Month}), {1, DurationUnit::Month}});
  auto ab = apply_time_frame(t, {"Order Date", d, {2, DurationUnit::Month}});
  CHECK(a.row_count() + b.row_count() == ab.row_count());
  std::vector<Row> joined = a.rows();
  joined.insert(joined.end(), b.rows().begin(), b.rows().end());
  CHECK(joined == ab.rows());
}

TEST_CASE("sum by category") {
  std::vector<Measure> m{agg("Sales", "Sales", Aggregate::Sum)};
  std::vector<Dimension> d{{"Category", "Category", DimensionKind::Nominal}};
  auto r = evaluate(three_rows(), m, d);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].keys[0] == Cell{std::string("Furniture")});
  CHECK(r.rows[0].values[0] == 30.0);
  CHECK(r.rows[1].values[0] == 5.0);
  CHECK(r.find_row(0, "Technology")->values[0] == 5.0);
}

TEST_CASE("avg and computed after aggregation") {
  Table t({{"Sales", ColumnType::Number}, {"Profit", ColumnType::Number}},
          {{Cell{10.0}, Cell{2.0}}, {Cell{10.0}, Cell{3.0}}});
  std::vector<Measure> m{agg("Sales", "Sales", Aggregate::Sum), agg("Profit", "Profit", Aggregate::Sum),
                         {"Profit Ratio", MeasureKind::Computed, std::nullopt, std::nullopt, "Profit / Sales",
                          std::nullopt},
                         agg("Avg Profit", "Profit", Aggregate::Avg)};
  auto r = evaluate(t, m, {});
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].values[2] == 0.25);
  CHECK(r.rows[0].values[3] == 2.5);
}

TEST_CASE("computed measure may precede its references") {
  std::vector<Measure> m{{"Ratio", MeasureKind::Computed, std::nullopt, std::nullopt, "Profit / Sales", std::nullopt},
                         agg("Sales", "Sales", Aggregate::Sum), agg("Profit", "Profit", Aggregate::Sum)};
  auto r = evaluate(three_rows(), m, {});
  CHECK(r.rows[0].values[0] == 6.0 / 35.0);
}

TEST_CASE("division by zero is a null cell with a warning") {
  std::vector<Measure> m{agg("Sales", "Sales", Aggregate::Sum),
                         {"Zero", MeasureKind::Computed, std::nullopt, std::nullopt, "Sales / (Sales - Sales)",
                          std::nullopt}};
  auto r = evaluate(three_rows(), m, {});
  CHECK_FALSE(r.rows[0].values[1]);
  CHECK(r.warnings.division_by_zero == 1);
}

TEST_CASE("null handling") {
  Table t({{"k", ColumnType::String}, {"v", ColumnType::Number}},
          {{Cell{std::string("a")}, Cell{1.0}}, {Cell{}, Cell{2.0}}, {Cell{std::string("a")}, Cell{}},
           {Cell{std::string("b")}, Cell{}}});
  std::vector<Measure> m{agg("sum", "v", Aggregate::Sum), agg("count", "v", Aggregate::Count),
                         agg("min", "v", Aggregate::Min)};
  std::vector<Dimension> d{{"k", "k", DimensionKind::Nominal}};
  auto r = evaluate(t, m, d);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].values == std::vector<std::optional<double>>{1.0, 2.0, 1.0});
  CHECK(r.rows[1].values == std::vector<std::optional<double>>{std::nullopt, 1.0, std::nullopt});
  CHECK(r.warnings.null_grouped == 1);
  CHECK(r.warnings.null_aggregated == 4);  // two null v cells, each skipped by sum and min
}

TEST_CASE("empty dimensions give one total row") {
  std::vector<Measure> m{agg("Sales", "Sales", Aggregate::Sum), agg("n", "Sales", Aggregate::Count)};
  auto total = evaluate(three_rows(), m, {});
  REQUIRE(total.rows.size() == 1);
  auto by = evaluate(three_rows(), m, std::vector<Dimension>{{"Category", "Category", DimensionKind::Nominal}});
  double s = 0;
  for (const auto& r : by.rows) s += *r.values[0];
  CHECK(*total.rows[0].values[0] == s);

  auto none = evaluate(Table(three_rows().columns(), {}), m, {});
  REQUIRE(none.rows.size() == 1);
  CHECK_FALSE(none.rows[0].values[0]);
  CHECK(none.rows[0].values[1] == 0.0);
}

TEST_CASE("zero fill materializes missing combinations") {
  Table t({{"a", ColumnType::String}, {"b", ColumnType::String}, {"v", ColumnType::Number}},
          {{Cell{std::string("x")}, Cell{std::string("p")}, Cell{1.0}},
           {Cell{std::string("y")}, Cell{std::string("q")}, Cell{2.0}}});
  std::vector<Measure> m{agg("s", "v", Aggregate::Sum), agg("m", "v", Aggregate::Max)};
  std::vector<Dimension> d{{"a", "a", DimensionKind::Nominal}, {"b", "b", DimensionKind::Nominal}};
  CHECK(evaluate(t, m, d).rows.size() == 2);
  auto filled = evaluate(t, m, d, {true, ExecutionPolicy::Parallel});
  REQUIRE(filled.rows.size() == 4);
  CHECK(filled.rows[1].keys == std::vector<Cell>{Cell{std::string("x")}, Cell{std::string("q")}});
  CHECK(filled.rows[1].values == std::vector<std::optional<double>>{0.0, std::nullopt});
}

TEST_CASE("component pipeline") {
  auto r = evaluate_component(tiny_sales_table(), sales_component());
  REQUIRE(r.rows.size() == 2);
  CHECK(r.find_row(0, "Furniture")->values[0] == 30.0);
  CHECK(r.find_row(0, "Technology")->values[0] == 5.0);

  std::vector<DataFilter> extra{{"Region", EqualsPredicate{std::string("West")}}};
  auto west = evaluate_component(tiny_sales_table(), sales_component(), extra);
  CHECK(west.find_row(0, "Furniture")->values[0] == 10.0);

  auto ratio = evaluate_component(tiny_sales_table(), profit_ratio_component());
  CHECK(ratio.rows[0].values[2] == 2.0 / 35.0);
}

TEST_CASE("filter conjunction composes") {
  auto t = tiny_sales_table();
  std::vector<DataFilter> a{{"Region", EqualsPredicate{std::string("West")}}};
  std::vector<DataFilter> b{{"Sales", RangePredicate{6, 100}}};
  std::vector<DataFilter> ab{a[0], b[0]};
  CHECK(apply_filters(apply_filters(t, a), b) == apply_filters(t, ab));
}

TEST_CASE("distinct values") {
  auto v = distinct_values(tiny_sales_table(), "Category");
  CHECK(v == std::vector<Cell>{Cell{std::string("Furniture")}, Cell{std::string("Office Supplies")},
                               Cell{std::string("Technology")}});
}
