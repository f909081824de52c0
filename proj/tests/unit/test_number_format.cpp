#include <doctest.h>

#include <cmath>
#include <string>

#include "dashsnap/templates/number_format.hpp"
#include "support/generators.hpp"

using namespace dashsnap;
using namespace dashsnap::templates;

TEST_CASE("display numbers") {
  CHECK(format_display(0.0) == "0");
  CHECK(format_display(30.0) == "30");
  CHECK(format_display(1234.5) == "1,234.5");
  CHECK(format_display(1234567.0) == "1,234,567");
  CHECK(format_display(0.256) == "0.26");
  CHECK(format_display(-1500.25) == "-1,500.25");
  CHECK(format_display(2.10) == "2.1");
  CHECK(format_display(-0.001) == "0");
  CHECK(format_display(std::optional<double>{}) == "no value");
  CHECK(format_display(Cell{Date::from_iso("2022-03-02")}) == "2022-03-02");
  CHECK(format_display(Cell{std::string("Furniture")}) == "Furniture");
}

TEST_CASE("percentages are whole") {
  CHECK(format_percent(0.6) == "60%");
  CHECK(format_percent(0.25) == "25%");
  CHECK(format_percent(1.0) == "100%");
  CHECK(format_percent(1.234) == "123%");
  CHECK(format_percent(0.0) == "0%");
}

TEST_CASE("property: a displayed number reads back to the value rounded to cents") {
  dashsnap::testing::Rng rng(0xC0FFEE);
  for (int i = 0; i < 5000; ++i) {
    double scale = std::pow(10.0, rng.between(-3, 7));
    double v = rng.real(-1.0, 1.0) * scale;
    std::string text = format_display(v);
    std::string plain;
    for (char ch : text) {
      if (ch != ',') plain += ch;
    }
    CAPTURE(v);
    CAPTURE(text);
    double back = std::stod(plain);
    CHECK(back == doctest::Approx(std::round(v * 100) / 100).epsilon(1e-12));
    CHECK(back == doctest::Approx(displayed_value(v)).epsilon(1e-12));
    // separators sit every three digits of the integer part
    auto dot = text.find('.');
    std::string integer = text.substr(0, dot);
    if (!integer.empty() && integer[0] == '-') integer.erase(0, 1);
    for (std::size_t k = 0; k < integer.size(); ++k) {
      bool comma_slot = (integer.size() - k) % 4 == 0;
      CHECK((integer[k] == ',') == comma_slot);
    }
  }
}
