#include <doctest.h>

#include "scaleplan/errors.hpp"
#include "scaleplan/si.hpp"

using namespace scaleplan;

TEST_SUITE("si") {

TEST_CASE("quantity parsing") {
  CHECK(si::parse_quantity("250") == 250.0);
  CHECK(si::parse_quantity("3.5e12") == 3.5e12);
  CHECK(si::parse_quantity("70B") == 70e9);
  CHECK(si::parse_quantity("70b") == 70e9);
  CHECK(si::parse_quantity("4.26T") == 4.26e12);
  CHECK(si::parse_quantity("1.5K") == 1500.0);
  CHECK(si::parse_quantity("633M") == 633e6);
  CHECK(si::parse_quantity(" 10T ") == 1e13);
  CHECK(si::parse_quantity("0") == 0.0);
  CHECK(si::parse_quantity("-2.5K") == -2500.0);

  CHECK_THROWS_AS(si::parse_quantity(""), ValidationError);
  CHECK_THROWS_AS(si::parse_quantity("B"), ValidationError);
  CHECK_THROWS_AS(si::parse_quantity("12Q"), ValidationError);
  CHECK_THROWS_AS(si::parse_quantity("1.2.3"), ValidationError);
  CHECK_THROWS_AS(si::parse_quantity("7 B"), ValidationError);
  CHECK_THROWS_AS(si::parse_quantity("inf"), ValidationError);
}

TEST_CASE("3-significant-figure rendering") {
  CHECK(si::format_sig3(1.8918) == "1.89");
  CHECK(si::format_sig3(2.531) == "2.53");
  CHECK(si::format_sig3(0.0914) == "0.0914");
  CHECK(si::format_sig3(12.0) == "12");
}

TEST_CASE("count rendering picks suffixes") {
  CHECK(si::format_count(70e9) == "70B");
  CHECK(si::format_count(41.58e9) == "41.6B");
  CHECK(si::format_count(4.26e12) == "4.26T");
  CHECK(si::format_count(6.3255e8) == "633M");
  CHECK(si::format_count(27.4e9) == "27.4B");
  CHECK(si::format_count(1530.0) == "1.53K");
  CHECK(si::format_count(999.6e9) == "1T");
  CHECK(si::format_count(0.0) == "0");
  CHECK(si::format_count(42.0) == "42");
  CHECK(si::format_count(3e16) == "3.00e16");
}

TEST_CASE("usd and percent rendering") {
  CHECK(si::format_usd(3.77e3) == "$3.77K");
  CHECK(si::format_usd(51.5e6) == "$51.5M");
  CHECK(si::format_percent(0.12) == "12%");
  CHECK(si::format_percent(0.091) == "9.1%");
  CHECK(si::format_percent(0.585) == "58.5%");
}

TEST_CASE("scientific rendering") {
  CHECK(si::format_sci3(2.806e24) == "2.81e24");
  CHECK(si::format_sci3(2.41e20) == "2.41e20");
  CHECK(si::format_sci3(1.5e-5) == "1.50e-5");
}

}  // TEST_SUITE
