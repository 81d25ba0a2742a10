#include "shiftgame/rational.hpp"

#include "doctest.h"

using shiftgame::int128;
using shiftgame::Rational;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));

  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(-3, 5).abs() == Rational(3, 5));
}

TEST_CASE("rational comparison") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(19, 20) >= Rational(19, 20));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(shiftgame::min(Rational(2, 7), Rational(1, 3)) == Rational(2, 7));
  CHECK(shiftgame::max(Rational(2, 7), Rational(1, 3)) == Rational(1, 3));
}

TEST_CASE("rational parsing") {
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-3/4") == Rational(-3, 4));
  CHECK(Rational::from_string("12") == Rational(12));
  CHECK(Rational::from_string("0.25") == Rational(1, 4));
  CHECK(Rational::from_string("-0.5") == Rational(-1, 2));
  CHECK(Rational::from_string(".0016") == Rational(16, 10000));
  CHECK(Rational::from_string("0.00395") == Rational(79, 20000));
  CHECK_THROWS_AS(Rational::from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::from_string("1/0"), std::domain_error);
}

TEST_CASE("rational printing") {
  CHECK(Rational(3, 4).to_string() == "3/4");
  CHECK(Rational(5).to_string() == "5");
  CHECK(Rational(-7, 2).to_string() == "-7/2");
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("overflow is reported, not wrapped") {
  int128 big = int128(1) << 126;
  Rational huge(big, 1);
  CHECK_THROWS_AS(huge * huge, std::overflow_error);
  CHECK_THROWS_AS(huge + huge, std::overflow_error);
}
