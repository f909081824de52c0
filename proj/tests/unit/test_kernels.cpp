#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "dashsnap/data/kernels.hpp"
#include "dashsnap/data/query.hpp"

using namespace dashsnap;
using namespace dashsnap::testing;

namespace {

struct ThresholdGuard {
  std::size_t saved = kernels::parallel_threshold();
  explicit ThresholdGuard(std::size_t rows) { kernels::set_parallel_threshold(rows); }
  ~ThresholdGuard() { kernels::set_parallel_threshold(saved); }
};

bool close(std::optional<double> a, std::optional<double> b, bool exact) {
  if (!a || !b) return !a && !b;
  if (exact) return *a == *b;
  return std::abs(*a - *b) <= 1e-9 * std::max(1.0, std::abs(*b));
}

void check_against_oracle(const RandomQuery& q, const ResultTable& r) {
  auto expected = oracle::aggregate(q);
  std::sort(expected.begin(), expected.end(), [](const oracle::Group& a, const oracle::Group& b) {
    return std::lexicographical_compare(a.keys.begin(), a.keys.end(), b.keys.begin(), b.keys.end(),
                                        [](const Cell& x, const Cell& y) { return compare_cells(x, y) < 0; });
  });
  REQUIRE(r.rows.size() == expected.size());
  for (std::size_t g = 0; g < expected.size(); ++g) {
    REQUIRE(r.rows[g].keys == expected[g].keys);
    for (std::size_t m = 0; m < q.measures.size(); ++m) {
      const auto& meas = q.measures[m];
      bool exact = meas.kind == MeasureKind::Column ||
                   (meas.kind == MeasureKind::Aggregated && meas.aggregate != Aggregate::Avg);
      CAPTURE(meas.name);
      CHECK(close(r.rows[g].values[m], expected[g].values[m], exact));
    }
  }
}

}  // namespace

TEST_CASE("parallel and serial evaluation agree with the oracle") {
  ThresholdGuard force_parallel(0);
  Rng rng(77);
  for (int i = 0; i < 60; ++i) {
    auto q = random_query(rng, 1500);
    CAPTURE(i);
    auto par = evaluate(q.table, q.measures, q.dimensions, {false, ExecutionPolicy::Parallel});
    auto ser = evaluate(q.table, q.measures, q.dimensions, {false, ExecutionPolicy::Serial});
    REQUIRE(par == ser);
    check_against_oracle(q, par);
  }
}

TEST_CASE("filter kernels agree on large tables") {
  ThresholdGuard force_parallel(0);
  Rng rng(5);
  std::vector<Row> rows;
  std::vector<Column> cols{{"d", ColumnType::Date}, {"s", ColumnType::String}, {"n", ColumnType::Number}};
  for (int r = 0; r < 20000; ++r) {
    rows.push_back({rng.chance(0.02) ? Cell{} : Cell{Date(2022, 1, 1).plus_days(rng.between(0, 365))},
                    Cell{std::string(1, static_cast<char>('a' + rng.between(0, 5)))},
                    Cell{static_cast<double>(rng.between(0, 100))}});
  }
  Table t(cols, rows);
  std::vector<DataFilter> filters{{"s", OneOfPredicate{{std::string("a"), std::string("c")}}},
                                  {"n", RangePredicate{10, 60}}};
  auto bound = kernels::bind_filters(t, filters);
  QueryWarnings wp, ws;
  CHECK(kernels::filter_mask(t, bound, &wp) == kernels::filter_mask_serial(t, bound, &ws));
  CHECK(wp == ws);
  QueryWarnings dp, ds;
  CHECK(kernels::date_window_mask(t, 0, Date(2022, 3, 2), Date(2022, 4, 2), &dp) ==
        kernels::date_window_mask_serial(t, 0, Date(2022, 3, 2), Date(2022, 4, 2), &ds));
  CHECK(dp == ds);
  CHECK(dp.null_filtered > 0);
}

TEST_CASE("grouped sums are bit-identical across policies") {
  ThresholdGuard force_parallel(0);
  std::vector<Row> rows;
  Rng rng(9);
  for (int r = 0; r < 50000; ++r) {
    rows.push_back({Cell{"k" + std::to_string(rng.between(0, 40))}, Cell{rng.real(-1e6, 1e6)}});
  }
  Table t({{"k", ColumnType::String}, {"v", ColumnType::Number}}, rows);
  std::vector<kernels::AggregateSpec> aggs{{1, Aggregate::Sum}, {1, Aggregate::Avg}};
  std::vector<std::size_t> keys{0};
  auto par = kernels::group_aggregate(t, keys, aggs);
  auto ser = kernels::group_aggregate_serial(t, keys, aggs);
  CHECK(par.keys == ser.keys);
  CHECK(par.values == ser.values);
}
