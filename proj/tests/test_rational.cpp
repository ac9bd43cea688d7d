#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace smtest;

TEST_CASE("rational parsing", "[rational]") {
  CHECK(R("3/10") == Rat(3, 10));
  CHECK(R("0.3") == Rat(3, 10));
  CHECK(R("0.35") == Rat(7, 20));
  CHECK(R(".5") == Rat(1, 2));
  CHECK(R("-1.25") == Rat(-5, 4));
  CHECK(R("2") == Rat(2));
  CHECK(R("4/8") == Rat(1, 2));  // canonical form
  CHECK_THROWS_AS(R(""), ParseError);
  CHECK_THROWS_AS(R("abc"), ParseError);
  CHECK_THROWS_AS(R("1/"), ParseError);
  CHECK_THROWS_AS(R("1.2.3"), ParseError);
}

TEST_CASE("rational formatting round-trips", "[rational]") {
  CHECK(rat::toString(R("3/10")) == "3/10");
  CHECK(rat::toString(R("2")) == "2");
  CHECK(rat::toString(R("-1/3")) == "-1/3");
  CHECK(R(rat::toString(R("123/456"))) == R("123/456"));
}

TEST_CASE("double conversion is exact", "[rational]") {
  Rat r = rat::fromDouble(0.5);
  CHECK(r == Rat(1, 2));
  CHECK(rat::fromDouble(0.1) != Rat(1, 10));  // 0.1 is not dyadic
  CHECK(rat::toDouble(Rat(1, 4)) == 0.25);
}
