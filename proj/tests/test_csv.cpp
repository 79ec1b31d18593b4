#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "newsort/csv.hpp"

using namespace newsort;

TEST_CASE("key files round-trip in both modes") {
  const KeyArray ints = IntKeys{3, -1, 4};
  std::ostringstream out;
  csv::write_keys(out, ints);
  CHECK(out.str() == "key\n3\n-1\n4\n");
  std::istringstream in(out.str());
  CHECK(csv::read_keys(in, KeyMode::integer) == ints);

  const KeyArray reals = RealKeys{0.1, -2.5, 1e-12};
  std::ostringstream rout;
  csv::write_keys(rout, reals);
  std::istringstream rin(rout.str());
  CHECK(csv::read_keys(rin, KeyMode::real) == reals);
}

TEST_CASE("key files reject bad rows with their line numbers") {
  std::istringstream no_header("3\n1\n");
  CHECK_THROWS_WITH(csv::read_keys(no_header, KeyMode::integer),
                    Catch::Matchers::ContainsSubstring("header"));

  std::istringstream bad_int("key\n1\n2\nabc\n");
  CHECK_THROWS_WITH(csv::read_keys(bad_int, KeyMode::integer),
                    Catch::Matchers::ContainsSubstring("line 4"));

  std::istringstream real_as_int("key\n1.5\n");
  CHECK_THROWS_AS(csv::read_keys(real_as_int, KeyMode::integer), csv::ParseError);

  std::istringstream with_nan("key\n1.0\nnan\n");
  CHECK_THROWS_WITH(csv::read_keys(with_nan, KeyMode::real),
                    Catch::Matchers::ContainsSubstring("NaN"));
}

TEST_CASE("doubles print in shortest round-trip form") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(2.647) == "2.647");
  CHECK(csv::format_double(1e-12) == "1e-12");
  CHECK(csv::format_double(499500.0) == "499500");
  for (double v : {0.7047, 3.3346, 1.0 / 3.0, 1e300}) {
    CHECK(csv::parse_double(csv::format_double(v), 0) == v);
  }
}

TEST_CASE("params print at up to six significant digits") {
  CHECK(csv::format_param(5.0) == "5");
  CHECK(csv::format_param(0.1) == "0.1");
  CHECK(csv::format_param(5.5) == "5.5");
  // grid arithmetic dust stays invisible at param precision
  CHECK(csv::format_param(0.1 + 0.1 + 0.1) == "0.3");
}

TEST_CASE("generic tables read by column name") {
  std::istringstream in("param,a,b\n1,10,100\n2,20,200\n");
  const csv::Table table = csv::read_table(in);
  CHECK(table.column("a") == std::vector<double>{10, 20});
  CHECK(table.column("param") == std::vector<double>{1, 2});
  CHECK_THROWS_AS(table.column("nope"), csv::ParseError);

  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_WITH(csv::read_table(ragged), Catch::Matchers::ContainsSubstring("line 2"));

  std::istringstream mixed("a,b\n1,x\n");
  CHECK_THROWS_AS(csv::read_table(mixed), csv::ParseError);
  std::istringstream mixed2("a,b\n1,x\n");
  const csv::Table lenient = csv::read_table(mixed2, /*strict=*/false);
  CHECK(std::isnan(lenient.rows[0][1]));
}
