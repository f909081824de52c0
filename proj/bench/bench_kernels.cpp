// Serial reference vs OpenMP kernels over synthetic order tables.
//
//   ./bench/bench_kernels --benchmark_counters_tabular=true
//
// Each benchmark runs as omp:0 (serial reference) and omp:1 (OpenMP) over the same
// table sizes; OMP_NUM_THREADS picks the thread count. Times are wall clock,
// since CPU time only counts the calling thread.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <array>
#include <map>
#include <memory>
#include <random>

#include "dashsnap/data/kernels.hpp"
#include "dashsnap/data/query.hpp"

using namespace dashsnap;

namespace {

const std::array<const char*, 3> kCategories{"Furniture", "Office Supplies", "Technology"};
const std::array<const char*, 4> kRegions{"Central", "East", "South", "West"};

Table make_orders(std::size_t rows) {
  std::mt19937_64 rng(2022 + rows);
  std::uniform_int_distribution<int> day(0, 729);
  std::uniform_int_distribution<std::size_t> cat(0, kCategories.size() - 1), reg(0, kRegions.size() - 1);
  std::lognormal_distribution<double> sales(4.5, 1.1);
  std::normal_distribution<double> margin(0.12, 0.2);
  const Date first(2021, 1, 1);
  std::vector<Row> out;
  out.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    double s = std::round(sales(rng) * 100) / 100;
    out.push_back({first.plus_days(day(rng)), std::string(kCategories[cat(rng)]), std::string(kRegions[reg(rng)]), s,
                   std::round(s * margin(rng) * 100) / 100});
  }
  return Table({{"Order Date", ColumnType::Date},
                {"Category", ColumnType::String},
                {"Region", ColumnType::String},
                {"Sales", ColumnType::Number},
                {"Profit", ColumnType::Number}},
               std::move(out));
}

const Table& orders(std::size_t rows) {
  static std::map<std::size_t, std::unique_ptr<Table>> cache;
  auto& slot = cache[rows];
  if (!slot) slot = std::make_unique<Table>(make_orders(rows));
  return *slot;
}

bool parallel(const benchmark::State& state) { return state.range(1) != 0; }

void label(benchmark::State& state) {
  state.SetLabel(parallel(state) ? "parallel" : "serial");
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = parallel(state) ? omp_get_max_threads() : 1;
}

void BM_filter_mask(benchmark::State& state) {
  const auto& t = orders(state.range(0));
  std::vector<DataFilter> filters{
      {"Category", OneOfPredicate{{std::string("Furniture"), std::string("Technology")}}},
      {"Sales", RangePredicate{50, 5000}}};
  auto bound = kernels::bind_filters(t, filters);
  for (auto _ : state) {
    auto mask = parallel(state) ? kernels::filter_mask(t, bound, nullptr) : kernels::filter_mask_serial(t, bound, nullptr);
    benchmark::DoNotOptimize(mask.data());
  }
  label(state);
}

void BM_date_window(benchmark::State& state) {
  const auto& t = orders(state.range(0));
  Date start(2022, 3, 2), end(2022, 4, 2);
  for (auto _ : state) {
    auto mask = parallel(state) ? kernels::date_window_mask(t, 0, start, end, nullptr)
                                : kernels::date_window_mask_serial(t, 0, start, end, nullptr);
    benchmark::DoNotOptimize(mask.data());
  }
  label(state);
}

void BM_group_aggregate(benchmark::State& state) {
  const auto& t = orders(state.range(0));
  std::array<std::size_t, 2> keys{1, 2};
  std::array<kernels::AggregateSpec, 3> aggs{
      kernels::AggregateSpec{3, Aggregate::Sum}, {4, Aggregate::Sum}, {3, Aggregate::Avg}};
  for (auto _ : state) {
    auto g = parallel(state) ? kernels::group_aggregate(t, keys, aggs) : kernels::group_aggregate_serial(t, keys, aggs);
    benchmark::DoNotOptimize(g.values.data());
  }
  label(state);
}

ComponentSpec ratio_component() {
  ComponentSpec c;
  c.id = "ratio";
  c.data_source = "orders";
  Measure sales{"Sales", MeasureKind::Aggregated};
  sales.source_column = "Sales";
  sales.aggregate = Aggregate::Sum;
  Measure profit{"Profit", MeasureKind::Aggregated};
  profit.source_column = "Profit";
  profit.aggregate = Aggregate::Sum;
  Measure ratio{"Profit Ratio", MeasureKind::Computed};
  ratio.expression = "Profit / Sales";
  c.measures = {sales, profit, ratio};
  Dimension region;
  region.name = "Region";
  region.source_column = "Region";
  region.kind = DimensionKind::Nominal;
  c.dimensions = {region};
  c.data_filters = {{"Category", OneOfPredicate{{std::string("Furniture"), std::string("Technology")}}}};
  c.time_frame = TimeFrame{"Order Date", Date(2022, 1, 1), Duration{1, DurationUnit::Quarter}};
  return c;
}

void BM_component_pipeline(benchmark::State& state) {
  const auto& t = orders(state.range(0));
  auto c = ratio_component();
  auto policy = parallel(state) ? ExecutionPolicy::Parallel : ExecutionPolicy::Serial;
  for (auto _ : state) {
    auto r = evaluate_component(t, c, {}, policy);
    benchmark::DoNotOptimize(r.rows.data());
  }
  label(state);
}

void sizes(benchmark::internal::Benchmark* b) {
  for (long rows : {10'000L, 100'000L, 1'000'000L}) {
    b->Args({rows, 0});
    b->Args({rows, 1});
  }
  b->ArgNames({"rows", "omp"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

struct ForceParallel {
  ForceParallel() { kernels::set_parallel_threshold(0); }
} force_parallel;

}  // namespace

BENCHMARK(BM_filter_mask)->Apply(sizes);
BENCHMARK(BM_date_window)->Apply(sizes);
BENCHMARK(BM_group_aggregate)->Apply(sizes);
BENCHMARK(BM_component_pipeline)->Apply(sizes);

BENCHMARK_MAIN();
