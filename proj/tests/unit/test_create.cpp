#include <doctest.h>

#include "dashsnap/lifecycle/create.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace dashsnap;
using namespace dashsnap::lifecycle;
using namespace dashsnap::testing;

namespace {

DashboardSelection sales_panel() {
  DashboardSelection s;
  s.panel_id = "sales-by-category";
  s.worksheet = "Sales by Category";
  s.data_source = "superstore";
  s.measures = {{"Sales", MeasureKind::Aggregated, "Sales", Aggregate::Sum, std::nullopt, "USD"}};
  s.dimensions = {{"Category", "Category", DimensionKind::Nominal}};
  s.data_filters = {{"Region", EqualsPredicate{std::string("West")}},
                    {"Order Date", DateRangePredicate{Date(2022, 3, 2), Date(2022, 4, 2)}}};
  s.original_design.mark = Mark::Bar;
  s.original_design.encodings = {{"x", "Sales"}, {"y", "Category"}};
  return s;
}

using Goals = std::map<std::string, double>;

}  // namespace

TEST_CASE("a panel's date filter becomes the time frame") {
  auto sel = sales_panel();
  auto c = create_component(sel, {});
  CHECK(c.id == "sales-by-category");
  CHECK(c.time_frame == TimeFrame{"Order Date", Date(2022, 3, 2), {1, DurationUnit::Month}});
  CHECK(c.data_filters == sel.data_filters);
  CHECK(c.measures == sel.measures);
  CHECK(c.dimensions == sel.dimensions);
  CHECK(c.original_design == sel.original_design);
  CHECK(c.panel == "sales-by-category");
  CHECK(c.worksheet == "Sales by Category");
}

TEST_CASE("frames read off date ranges") {
  auto f = [](const char* a, const char* b) {
    return frame_of("d", DateRangePredicate{Date::from_iso(a), Date::from_iso(b)}).duration;
  };
  CHECK(f("2022-01-01", "2022-04-01") == Duration{1, DurationUnit::Quarter});
  CHECK(f("2022-01-01", "2023-01-01") == Duration{1, DurationUnit::Year});
  CHECK(f("2022-03-01", "2022-03-15") == Duration{2, DurationUnit::Week});
  CHECK(f("2022-03-01", "2022-03-04") == Duration{3, DurationUnit::Day});
  CHECK(f("2022-01-31", "2022-02-28") == Duration{1, DurationUnit::Month});
  CHECK(f("2022-03-02", "2022-05-02") == Duration{2, DurationUnit::Month});
}

TEST_CASE("property: a frame read off a range ends where the range ends") {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    Date start = random_date(rng);
    Date end = oracle::step(start, random_duration(rng));
    auto tf = frame_of("d", DateRangePredicate{start, end});
    CAPTURE(start.iso());
    CAPTURE(end.iso());
    CHECK(tf.start == start);
    CHECK(tf.end() == end);
  }
}

TEST_CASE("panels without a date filter need an imposed frame") {
  auto sel = sales_panel();
  sel.data_filters.pop_back();
  CHECK(thrown_code([&] { create_component(sel, {}); }) == Code::NoTimeFrame);

  CreateOptions opts;
  opts.imposed_time_frame = TimeFrame{"Order Date", Date(2022, 6, 1), {2, DurationUnit::Week}};
  CHECK(create_component(sel, opts).time_frame == *opts.imposed_time_frame);
}

TEST_CASE("the panel's own frame wins over an imposed one") {
  CreateOptions opts;
  opts.imposed_time_frame = TimeFrame{"Order Date", Date(2022, 6, 1), {2, DurationUnit::Week}};
  CHECK(create_component(sales_panel(), opts).time_frame.start == Date(2022, 3, 2));
}

TEST_CASE("options carry over") {
  CreateOptions opts;
  opts.id = "west";
  opts.appearance = Appearance::Both;
  opts.caption = "West only";
  opts.custom_text = "{measure}: {total}";
  opts.annotations = {{AnnotationKind::Note, DimensionValueTarget{"Category", std::string("Furniture")}, "x"}};
  opts.interactive_filters = {DropdownFilter{"Category", {std::string("Furniture")}}};
  opts.template_binding = TemplateBinding{"simple-breakdown", {}};
  auto c = create_component(sales_panel(), opts);
  CHECK(c.id == "west");
  CHECK(c.appearance == Appearance::Both);
  CHECK(c.caption == opts.caption);
  CHECK(c.custom_text == opts.custom_text);
  CHECK(c.annotations == opts.annotations);
  CHECK(c.interactive_filters == opts.interactive_filters);
  CHECK(c.template_binding == opts.template_binding);
}

TEST_CASE("template bindings are checked against the data") {
  auto table = tiny_sales_table();
  auto sel = sales_panel();
  sel.data_filters.erase(sel.data_filters.begin());  // all regions: Furniture and Technology in March
  CreateOptions opts;

  opts.template_binding = TemplateBinding{"breakdown-with-goal", {{"goal", Goals{{"Furniture", 50}}}}};
  CHECK(thrown_code([&] { create_component(sel, opts, &table); }) == Code::ParamCategoryGap);

  opts.template_binding =
      TemplateBinding{"breakdown-with-goal", {{"goal", Goals{{"Furniture", 50}, {"Technology", 20}, {"Chairs", 1}}}}};
  CHECK(thrown_code([&] { create_component(sel, opts, &table); }) == Code::ParamUnknownCategory);

  // Office Supplies exists in the source but not in March: a goal for it is fine.
  opts.template_binding = TemplateBinding{
      "breakdown-with-goal", {{"goal", Goals{{"Furniture", 50}, {"Technology", 20}, {"Office Supplies", 5}}}}};
  CHECK(thrown_code([&] { create_component(sel, opts, &table); }) == std::nullopt);

  opts.template_binding = TemplateBinding{"time-series-with-threshold", {}};
  CHECK(thrown_code([&] { create_component(sel, opts, &table); }) == Code::TemplateInapplicable);
  CHECK(thrown_code([&] { create_component(sel, opts); }) == Code::TemplateInapplicable);

  opts.template_binding = TemplateBinding{"no-such-design", {}};
  CHECK(thrown_code([&] { create_component(sel, opts); }) == Code::UnknownTemplate);
}

TEST_CASE("composition") {
  FixedClock clock(Timestamp::from_iso("2022-03-02T08:00"));
  ComposeRequest req;
  req.id = "march";
  req.title = "March";
  req.author = "ana";
  req.components = {sales_component(), profit_ratio_component(), sales_trend_component()};
  req.curation = StackCuration{};
  req.update_policy = ManualAuthorPolicy{};

  auto s = compose_snapshot(req, clock);
  CHECK(s.version == 1);
  CHECK(s.components.size() == 3);
  CHECK(std::holds_alternative<StackCuration>(s.curation));
  CHECK(s.freshness == Date(2022, 5, 2));
  CHECK(s.created_at == clock.now());

  SUBCASE("freshness override wins") {
    req.overrides.freshness = Date(2022, 6, 1);
    CHECK(compose_snapshot(req, clock).freshness == Date(2022, 6, 1));
  }
  SUBCASE("a single component mini-dashboard") {
    req.components = {sales_component()};
    req.curation = MiniDashboardCuration{2};
    CHECK(compose_snapshot(req, clock).components.size() == 1);
  }
  SUBCASE("no components") {
    req.components.clear();
    try {
      compose_snapshot(req, clock);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(e.report().has(Code::NoComponents));
    }
  }
  SUBCASE("duplicate component ids") {
    req.components = {sales_component("a"), profit_ratio_component("a")};
    CHECK_THROWS_AS(compose_snapshot(req, clock), ValidationError);
  }
  SUBCASE("recurrence horizon must lie ahead") {
    req.update_policy = RecurrenceRule{{1, DurationUnit::Month}, Date(2022, 3, 1), {9, 0}};
    CHECK_THROWS_AS(compose_snapshot(req, clock), ValidationError);
  }
}
