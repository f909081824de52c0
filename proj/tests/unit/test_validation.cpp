#include "doctest.h"
#include "support/fixtures.hpp"

#include <map>

#include "dashsnap/core/freshness.hpp"
#include "dashsnap/core/validation.hpp"

using namespace dashsnap;
using namespace dashsnap::testing;

namespace {

struct MapResolver : SchemaResolver {
  std::map<std::string, DataSourceSchema, std::less<>> sources;
  std::optional<DataSourceSchema> schema_of(std::string_view id) const override {
    auto it = sources.find(id);
    if (it == sources.end()) return std::nullopt;
    return it->second;
  }
};

MapResolver superstore_resolver() {
  MapResolver r;
  r.sources["superstore"] = superstore_schema();
  return r;
}

}  // namespace

TEST_CASE("well-formed component validates clean") {
  auto report = validate_component(sales_component(), superstore_schema());
  CHECK_MESSAGE(report.ok(), report.str());
  CHECK(validate_component(profit_ratio_component(), superstore_schema()).ok());
  CHECK(validate_component(sales_trend_component(), superstore_schema()).ok());
}

TEST_CASE("time frame on a nominal field") {
  auto c = sales_component();
  c.time_frame.field = "Category";
  auto report = validate_component(c, superstore_schema());
  CHECK(report.has(Code::TemporalFieldRequired));
}

TEST_CASE("computed measure references") {
  auto c = profit_ratio_component();
  CHECK(check_component_shape(c).ok());
  c.measures.erase(c.measures.begin() + 1);  // drop Profit
  CHECK(check_component_shape(c).has(Code::UnknownMeasureRef));

  auto cyc = profit_ratio_component();
  cyc.measures[1] = {"Profit", MeasureKind::Computed, std::nullopt, std::nullopt, "[Profit Ratio] * 2", std::nullopt};
  CHECK(check_component_shape(cyc).has(Code::CyclicMeasureRef));
}

TEST_CASE("column checks need the schema") {
  auto c = sales_component();
  c.measures[0].source_column = "Revenue";
  CHECK(check_component_shape(c).ok());
  CHECK(validate_component(c, superstore_schema()).has(Code::UnknownColumn));

  auto t = sales_component();
  t.measures[0].source_column = "Category";
  CHECK(validate_component(t, superstore_schema()).has(Code::TypeMismatch));

  auto f = sales_component();
  f.data_filters.push_back({"Sales", EqualsPredicate{std::string("lots")}});
  CHECK(validate_component(f, superstore_schema()).has(Code::FilterTypeMismatch));
}

TEST_CASE("shape violations") {
  auto c = sales_component();
  c.measures[0].aggregate.reset();
  CHECK(check_component_shape(c).has(Code::MeasureShape));

  auto e = sales_component();
  e.original_design.encodings["x"] = "Profit";
  CHECK(check_component_shape(e).has(Code::EncodingFieldUnknown));

  auto a = sales_component();
  a.appearance = Appearance::Text;
  CHECK(check_component_shape(a).has(Code::AppearanceRequiresVisual));

  auto n = sales_component();
  n.annotations.push_back({AnnotationKind::Highlight, DimensionValueTarget{"Region", std::string("West")}, {}});
  CHECK(check_component_shape(n).has(Code::AnnotationUnresolved));

  auto d = sales_component();
  d.time_frame.duration.count = 0;
  CHECK(check_component_shape(d).has(Code::DurationInvalid));
}

TEST_CASE("snapshot level checks") {
  auto resolver = superstore_resolver();
  SnapshotSpec s = demo_snapshot();
  s.components = {sales_component("a"), sales_component("b")};
  s.curation = CarouselCuration{};
  CHECK_MESSAGE(validate_snapshot(s, resolver).ok(), validate_snapshot(s, resolver).str());

  auto horizon = s;
  horizon.update_policy = RecurrenceRule{{1, DurationUnit::Month}, Date(2022, 3, 1), {9, 0}};
  CHECK(validate_snapshot(horizon, resolver).has(Code::RecurrenceHorizonInvalid));

  auto empty = s;
  empty.components.clear();
  CHECK(validate_snapshot(empty, resolver).has(Code::NoComponents));

  auto dup = s;
  dup.components[1].id = "a";
  CHECK(validate_snapshot(dup, resolver).has(Code::DuplicateComponentId));

  auto unknown = s;
  unknown.components[0].data_source = "nowhere";
  CHECK(validate_snapshot(unknown, resolver).has(Code::UnknownDataSource));

  auto completeness = s;
  completeness.completeness = Completeness{true, std::nullopt, DurationUnit::Day};
  CHECK(validate_snapshot(completeness, resolver).has(Code::CompletenessInvalid));
}

TEST_CASE("validation is deterministic") {
  auto c = sales_component();
  c.time_frame.field = "Category";
  c.measures[0].source_column = "Nope";
  auto a = validate_component(c, superstore_schema());
  auto b = validate_component(c, superstore_schema());
  CHECK(a == b);
  CHECK(a.violations.size() >= 2);
}

TEST_CASE("freshness examples") {
  CHECK(infer_freshness(std::vector<ComponentSpec>{sales_component()}) == Date(2022, 5, 2));

  auto a = sales_component("a");
  a.time_frame = {"Order Date", Date(2022, 3, 1), {1, DurationUnit::Month}};
  auto b = sales_component("b");
  b.time_frame = {"Order Date", Date(2022, 3, 8), {1, DurationUnit::Week}};
  CHECK(infer_freshness(std::vector<ComponentSpec>{a, b}) == Date(2022, 5, 1));

  b.time_frame = {"Order Date", Date(2022, 3, 25), {1, DurationUnit::Week}};
  CHECK(b.time_frame.end() == Date(2022, 4, 1));
  CHECK(infer_freshness(std::vector<ComponentSpec>{b, a}) == Date(2022, 5, 1));
}
