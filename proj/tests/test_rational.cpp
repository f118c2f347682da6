#include "doctest.h"
#include "rational.hpp"

using namespace cfp;

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("0") == Rational(0));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("abc").has_value());
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("1/").has_value());
  CHECK(!parse_rational("1/2/3").has_value());
}

TEST_CASE("to_string round-trips through parse_rational") {
  for (const Rational& r : {Rational(7, 3), Rational(5), Rational(-9, 8), Rational(0)}) {
    auto back = parse_rational(to_string(r));
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
}

TEST_CASE("ceil_log computes the smallest sufficient exponent") {
  CHECK(ceil_log(Rational(2), Rational(1)) == 0);
  CHECK(ceil_log(Rational(2), Rational(1024)) == 10);
  CHECK(ceil_log(Rational(2), Rational(1025)) == 11);
  // (5/4)^20 < 100 <= (5/4)^21
  CHECK(ceil_log(Rational(5, 4), Rational(100)) == 21);
}

TEST_CASE("round_up_to_power covers fractional targets") {
  CHECK(round_up_to_power(Rational(2), Rational(3)) == Rational(4));
  CHECK(round_up_to_power(Rational(2), Rational(4)) == Rational(4));
  CHECK(round_up_to_power(Rational(2), Rational(1, 3)) == Rational(1, 2));
}
