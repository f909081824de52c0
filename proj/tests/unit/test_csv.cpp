#include "doctest.h"
#include "support/fixtures.hpp"

#include "dashsnap/data/csv.hpp"

using namespace dashsnap;
using dashsnap::testing::thrown_code;

TEST_CASE("types are inferred") {
  auto t = load_table_text("Order Date,Category,Sales\n2022-03-02,Furniture,10\n2022-03-05,Technology,5.5\n"
                           "2022-03-09,Furniture,-2\n");
  REQUIRE(t.column_count() == 3);
  CHECK(t.columns()[0].type == ColumnType::Date);
  CHECK(t.columns()[1].type == ColumnType::String);
  CHECK(t.columns()[2].type == ColumnType::Number);
  CHECK(t.row_count() == 3);
  CHECK(t.at(1, 2) == Cell{5.5});
  CHECK(t.at(0, 0) == Cell{Date(2022, 3, 2)});
}

TEST_CASE("header-only and blank input") {
  auto t = load_table_text("a,b\n");
  CHECK(t.row_count() == 0);
  CHECK(t.column_count() == 2);
  CHECK(thrown_code([] { load_table_text(""); }) == Code::CsvRagged);
}

TEST_CASE("quoting, BOM, CRLF and nulls") {
  auto t = load_table_text("\xEF\xBB\xBFname,note,v\r\n\"Smith, J\",\"said \"\"hi\"\"\",1\r\nLee,,\r\n\r\n");
  REQUIRE(t.row_count() == 2);
  CHECK(t.columns()[0].name == "name");
  CHECK(t.at(0, 0) == Cell{std::string("Smith, J")});
  CHECK(t.at(0, 1) == Cell{std::string("said \"hi\"")});
  CHECK(is_null(t.at(1, 1)));
  CHECK(is_null(t.at(1, 2)));
  CHECK(t.columns()[2].type == ColumnType::Number);
}

TEST_CASE("structural errors") {
  CHECK(thrown_code([] { load_table_text("a,b\n1,2,3\n"); }) == Code::CsvRagged);
  CHECK(thrown_code([] { load_table_text("a,a\n1,2\n"); }) == Code::CsvDuplicateHeader);
  SchemaOverride schema{{"Sales", ColumnType::Number}};
  try {
    load_table_text("Category,Sales\nFurniture,10\nTechnology,n/a\n", schema);
    FAIL("expected CSV_CELL_TYPE");
  } catch (const Error& e) {
    CHECK(e.code() == Code::CsvCellType);
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    CHECK(std::string(e.what()).find("Sales") != std::string::npos);
  }
}

TEST_CASE("sidecar schema overrides inference") {
  auto schema = parse_schema_sidecar("Zip: string\nWhen: date\n");
  auto t = load_table_text("Zip,When\n02139,2022-01-01\n", schema);
  CHECK(t.columns()[0].type == ColumnType::String);
  CHECK(t.at(0, 0) == Cell{std::string("02139")});
  CHECK(thrown_code([] { parse_schema_sidecar("Zip: integer\n"); }) == Code::InvalidValue);
}

TEST_CASE("write then load round-trips") {
  auto t = testing::tiny_sales_table();
  CHECK(load_table_text(write_csv(t)) == t);
  Table odd({{"s", ColumnType::String}, {"n", ColumnType::Number}},
            {{Cell{std::string("a,\"b\"\nc")}, Cell{0.1}}, {Cell{}, Cell{-3e-9}}});
  CHECK(load_table_text(write_csv(odd), SchemaOverride{{"s", ColumnType::String}}) == odd);
}
