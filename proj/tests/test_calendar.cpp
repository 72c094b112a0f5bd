#include <catch2/catch_amalgamated.hpp>

#include "liqnet/calendar.hpp"

using liqnet::Date;
using liqnet::Quarter;

TEST_CASE("date parsing and validation") {
  const Date d = Date::parse("2007-09-14");
  CHECK(d.year == 2007);
  CHECK(d.month == 9);
  CHECK(d.day == 14);
  CHECK(d.to_string() == "2007-09-14");
  CHECK_THROWS_AS(Date::parse("2007-02-30"), std::invalid_argument);
  CHECK_THROWS_AS(Date::parse("2007/02/01"), std::invalid_argument);
  CHECK_THROWS_AS(Date::parse("nonsense"), std::invalid_argument);
  CHECK_NOTHROW(Date::parse("2008-02-29"));  // leap year
  CHECK_THROWS_AS(Date::parse("2007-02-29"), std::invalid_argument);
}

TEST_CASE("calendar quarters") {
  CHECK(Quarter::of(Date{2007, 1, 1}) == Quarter{2007, 1});
  CHECK(Quarter::of(Date{2007, 3, 31}) == Quarter{2007, 1});
  CHECK(Quarter::of(Date{2007, 4, 1}) == Quarter{2007, 2});
  CHECK(Quarter::of(Date{2007, 12, 31}) == Quarter{2007, 4});
  CHECK(Quarter{2007, 3}.label() == "2007Q3");
  CHECK(Quarter::parse("2007Q3") == Quarter{2007, 3});
  CHECK(Quarter{2007, 4}.next() == Quarter{2008, 1});
  CHECK_THROWS_AS(Quarter::parse("2007Q5"), std::invalid_argument);
}

TEST_CASE("every day offset of a quarter maps back into it") {
  for (const Quarter q : {Quarter{2008, 1}, Quarter{2007, 3}, Quarter{2011, 4}}) {
    const int days = q.days_in_quarter();
    for (int off = 0; off < days; ++off) {
      const Date d = q.date_at(off);
      REQUIRE(d.valid());
      REQUIRE(Quarter::of(d) == q);
    }
  }
  CHECK(Quarter{2008, 1}.days_in_quarter() == 91);  // leap February
  CHECK(Quarter{2007, 1}.days_in_quarter() == 90);
}
