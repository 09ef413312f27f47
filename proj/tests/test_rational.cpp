#include <limits>
#include <sstream>

#include "beliefvote/rational.hpp"
#include "doctest.h"

using beliefvote::Rational;

TEST_CASE("rationals normalize sign and common factors") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-3, -6).den() == 2);
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
  CHECK(-Rational(5, 7) == Rational(-5, 7));
  CHECK(Rational(1, 3) * Rational(0) + Rational(2, 3) * Rational(1) == Rational(2, 3));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("ordering compares exact values") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(51, 100) > Rational(1, 2));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  const Rational big(std::numeric_limits<std::int64_t>::max() - 1, std::numeric_limits<std::int64_t>::max());
  CHECK(big < Rational(1));
}

TEST_CASE("overflow throws instead of wrapping") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  CHECK(big * Rational(1, 2) == Rational(std::numeric_limits<std::int64_t>::max(), 2));
}

TEST_CASE("parse accepts integers, fractions and decimals") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("1/3") == Rational(1, 3));
  CHECK(Rational::parse("2/6") == Rational(1, 3));
  CHECK(Rational::parse("-1/3") == Rational(-1, 3));
  CHECK(Rational::parse("0.51") == Rational(51, 100));
  CHECK(Rational::parse("-0.5") == Rational(-1, 2));
  CHECK(Rational::parse("1.0") == Rational(1));
  for (const char* bad : {"", "1/", "/2", "1/0", "a", "1.2.3", "1e3", " 1", "0.", "1/-2", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS(Rational::parse(bad));
  }
}

TEST_CASE("str is canonical p/q and round-trips") {
  CHECK(Rational(2).str() == "2/1");
  CHECK(Rational(-2, 6).str() == "-1/3");
  for (const Rational r : {Rational(0), Rational(7, 9), Rational(-13, 4), Rational(1000001, 3)}) {
    CHECK(Rational::parse(r.str()) == r);
  }
  std::ostringstream os;
  os << Rational(2, 3);
  CHECK(os.str() == "2/3");
}

TEST_CASE("predicates") {
  CHECK(Rational(-4, 2).is_integer());
  CHECK_FALSE(Rational(1, 2).is_integer());
  CHECK(Rational(-1, 9).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(1, 9).sign() == 1);
}
