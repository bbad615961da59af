#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>

#include "agsparse/csv.hpp"
#include "agsparse/errors.hpp"
#include "agsparse/rng.hpp"

using namespace agsparse;

TEST_CASE("format_double round-trips exactly") {
  Rng rng(6);
  std::vector<double> values{0.0,   -0.0, 1.0,    0.1,   1e-17,
                             -3.25, 1e300, -1e-300, 2.0 / 3.0};
  for (int i = 0; i < 200; ++i) values.push_back(std::exp(20.0 * (rng.uniform() - 0.5)) * (rng.normal()));
  for (double v : values) {
    const std::string s = csv::format_double(v);
    double back = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(res.ec == std::errc());
    CHECK(back == v);
  }
  CHECK(csv::format_double(std::nan("")) == "");
  CHECK(csv::format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("table write/parse round trip") {
  csv::Table t;
  t.header = {"name", "value", "note"};
  t.rows = {{"plain", "1.5", ""},
            {"with,comma", "2", "a\"quote\""},
            {"", "-3.25", "x"}};
  const std::string text = csv::to_string(t);
  const csv::Table back = csv::parse_string(text);
  CHECK(back == t);
  // emitting the parsed table reproduces the bytes
  CHECK(csv::to_string(back) == text);
}

TEST_CASE("numeric csv reader") {
  std::istringstream in("a,b,y\n1,2.5,0\n-1,3e2,1\n");
  const csv::NumericCsv d = csv::read_numeric_csv(in);
  REQUIRE(d.header.size() == 3);
  CHECK(d.values.rows() == 2);
  CHECK(d.values(0, 1) == 2.5);
  CHECK(d.values(1, 1) == 300.0);

  std::istringstream bad("a,b\n1,x\n");
  CHECK_THROWS_AS(csv::read_numeric_csv(bad), DomainError);
  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(csv::read_numeric_csv(ragged), DomainError);
  CHECK_THROWS_AS(csv::read_numeric_csv_file("/nonexistent/file.csv"),
                  DomainError);
}
