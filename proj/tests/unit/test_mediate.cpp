#include <doctest.h>

#include "dashsnap/templates/mediate.hpp"
#include "support/fixtures.hpp"

using namespace dashsnap;
using namespace dashsnap::templates;
using namespace dashsnap::testing;

namespace {

using Goals = std::map<std::string, double>;

const TemplateDesign& goal_design() { return Catalog::builtin().require("breakdown-with-goal"); }

}  // namespace

TEST_CASE("transfer copies the component's attributes, not its parameters") {
  auto c = sales_component();
  c.original_design.scales.push_back({"Sales", "linear", {}, {"#123456"}});
  c.template_binding = TemplateBinding{"simple-breakdown", {}};
  auto cfg = transfer(c);
  CHECK(cfg.design_id.empty());
  CHECK(cfg.measures == c.measures);
  CHECK(cfg.dimensions == c.dimensions);
  CHECK(cfg.time_frame == c.time_frame);
  CHECK(cfg.data_filters == c.data_filters);
  CHECK(cfg.scales == c.original_design.scales);
  CHECK(cfg.parameters.empty());
}

TEST_CASE("mediation binds parameters to the transferred attributes") {
  auto c = sales_component();
  std::map<std::string, ParamValue> params{{"goal", Goals{{"Furniture", 50}, {"Technology", 20}}},
                                           {"total-goal", 70.0}};
  std::vector<std::string> observed{"Furniture", "Technology"};
  auto cfg = mediate_config(c, goal_design(), params, &observed);
  CHECK(cfg.design_id == "breakdown-with-goal");
  CHECK(cfg.parameters == params);
  CHECK(cfg.number("total-goal") == 70.0);
  REQUIRE(cfg.per_category("goal") != nullptr);
  CHECK(cfg.per_category("goal")->at("Technology") == 20);
  CHECK(cfg.number("goal") == std::nullopt);
  CHECK(cfg.per_category("total-goal") == nullptr);
}

TEST_CASE("a goal per category must cover every category in the result") {
  auto c = sales_component();
  std::map<std::string, ParamValue> params{{"goal", Goals{{"Furniture", 50}}}};
  std::vector<std::string> observed{"Furniture", "Technology"};
  CHECK(thrown_code([&] { mediate_config(c, goal_design(), params, &observed); }) == Code::ParamCategoryGap);

  ValidationReport r;
  check_parameters(goal_design(), params, &observed, nullptr, "p", r);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].path == "p.goal");
  CHECK(r.violations[0].message.find("Technology") != std::string::npos);
}

TEST_CASE("goals for categories the data lacks are rejected only when known categories are given") {
  auto c = sales_component();
  std::map<std::string, ParamValue> params{{"goal", Goals{{"Furniture", 50}, {"Chairs", 1}}}};
  std::vector<std::string> observed{"Furniture"};
  std::vector<std::string> known{"Furniture", "Technology", "Office Supplies"};
  CHECK(thrown_code([&] { mediate_config(c, goal_design(), params, &observed); }) == std::nullopt);
  CHECK(thrown_code([&] { mediate_config(c, goal_design(), params, &observed, &known); }) ==
        Code::ParamUnknownCategory);
}

TEST_CASE("mediation errors") {
  auto c = sales_component();
  SUBCASE("missing required parameter") {
    CHECK(thrown_code([&] { mediate_config(c, goal_design(), {}); }) == Code::ParamMissing);
  }
  SUBCASE("wrong parameter type") {
    std::map<std::string, ParamValue> params{{"goal", 50.0}};
    CHECK(thrown_code([&] { mediate_config(c, goal_design(), params); }) == Code::ParamType);
  }
  SUBCASE("unknown parameter name") {
    std::map<std::string, ParamValue> params{{"goal", Goals{}}, {"stretch", 1.0}};
    CHECK(thrown_code([&] { mediate_config(c, goal_design(), params); }) == Code::UnknownKey);
  }
  SUBCASE("shape does not fit") {
    const auto& series = Catalog::builtin().require("time-series-with-threshold");
    CHECK(thrown_code([&] { mediate_config(c, series, {}); }) == Code::TemplateInapplicable);
    CHECK(thrown_code([&] { mediate_config(sales_trend_component(), series, {}); }) == std::nullopt);
  }
}

TEST_CASE("every problem is reported, not just the first") {
  std::map<std::string, ParamValue> params{{"total-goal", std::string("x")}, {"bogus", 1.0}};
  ValidationReport r;
  check_parameters(goal_design(), params, nullptr, nullptr, "", r);
  CHECK(r.violations.size() == 3);
  CHECK(r.has(Code::ParamType));
  CHECK(r.has(Code::UnknownKey));
  CHECK(r.has(Code::ParamMissing));
}
