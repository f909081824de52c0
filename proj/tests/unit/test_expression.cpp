#include "doctest.h"
#include "support/fixtures.hpp"

#include <map>

#include "dashsnap/core/expression.hpp"

using namespace dashsnap;
using dashsnap::testing::thrown_code;

namespace {

Expression::Outcome eval(const std::string& text, const std::map<std::string, std::optional<double>>& env) {
  return Expression::parse(text).evaluate([&](const std::string& n) { return env.at(n); });
}

}  // namespace

TEST_CASE("arithmetic precedence and parentheses") {
  CHECK(eval("1 + 2 * 3", {}).value == 7);
  CHECK(eval("(1 + 2) * 3", {}).value == 9);
  CHECK(eval("-2 * -3", {}).value == 6);
  CHECK(eval("10 / 4 - 1", {}).value == 1.5);
  CHECK(eval("8 / 2 / 2", {}).value == 2);
  CHECK(eval("8 - 2 - 2", {}).value == 4);
}

TEST_CASE("names, bracketed names and references") {
  auto e = Expression::parse("Profit / [Order Count] + Profit");
  CHECK(e.references() == std::vector<std::string>{"Profit", "Order Count"});
  auto v = eval("Profit / [Order Count]", {{"Profit", 3.0}, {"Order Count", 4.0}});
  CHECK(v.value == 0.75);
  CHECK(Expression::parse(e.str()).str() == e.str());
}

TEST_CASE("profit ratio is computed after aggregation") {
  // sum(Profit) = 2 + 3, sum(Sales) = 10 + 10
  CHECK(eval("Profit / Sales", {{"Profit", 5.0}, {"Sales", 20.0}}).value == 0.25);
}

TEST_CASE("division by zero and nulls give null") {
  auto z = eval("a / b", {{"a", 1.0}, {"b", 0.0}});
  CHECK_FALSE(z.value);
  CHECK(z.division_by_zero);
  auto n = eval("a + b", {{"a", 1.0}, {"b", std::nullopt}});
  CHECK_FALSE(n.value);
  CHECK_FALSE(n.division_by_zero);
}

TEST_CASE("syntax errors") {
  for (const char* bad : {"", "1 +", "(a", "a b", "a ** b", "[unterminated", "sum(a)", "1..2"}) {
    CAPTURE(bad);
    CHECK(thrown_code([&] { Expression::parse(bad); }) == Code::ExpressionSyntax);
  }
}

TEST_CASE("cycle detection") {
  CHECK_FALSE(find_cycle({{"a", {"b"}}, {"b", {}}}));
  auto cyc = find_cycle({{"a", {"b"}}, {"b", {"c"}}, {"c", {"a"}}});
  REQUIRE(cyc);
  CHECK((*cyc == "a" || *cyc == "b" || *cyc == "c"));
  CHECK(find_cycle({{"a", {"a"}}}) == std::optional<std::string>("a"));
}
