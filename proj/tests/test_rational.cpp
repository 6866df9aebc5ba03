#include <catch2/catch_amalgamated.hpp>

#include "infodec/rational.hpp"

using infodec::Rational;

TEST_CASE("rational parsing accepts fractions, decimals and integers") {
  CHECK(Rational::parse("2/6") == Rational(1, 3));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
  CHECK(Rational::parse("4/-6") == Rational(-2, 3));
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("+3") == Rational(3));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse("-0.125") == Rational(-1, 8));
  CHECK(Rational::parse("1.") == Rational(1));
  CHECK(Rational::parse("0.333333") == Rational(333333, 1000000));
}

TEST_CASE("rational parsing rejects junk") {
  CHECK_THROWS_AS(Rational::parse(""), infodec::argument_error);
  CHECK_THROWS_AS(Rational::parse("."), infodec::argument_error);
  CHECK_THROWS_AS(Rational::parse("1/0"), infodec::argument_error);
  CHECK_THROWS_AS(Rational::parse("one"), infodec::argument_error);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), infodec::argument_error);
  CHECK_THROWS_AS(Rational::parse("0.1234567890123456789"), infodec::argument_error);
}

TEST_CASE("rational arithmetic stays exact and reduced") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(1, 2) == Rational(0));
  CHECK(Rational(1, 3) / Rational(1, 6) == Rational(2));
  CHECK((Rational(1) - Rational(1, 6)).str() == "5/6");
  Rational sum;
  for (int i = 0; i < 6; ++i) sum += Rational(1, 6);
  CHECK(sum == Rational(1));
  CHECK(sum.str() == "1");
}

TEST_CASE("rational ordering and accessors") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(2, 6).num() == 1);
  CHECK(Rational(2, 6).den() == 3);
  CHECK(Rational(0).is_zero());
  CHECK(Rational(-1, 4).negative());
  CHECK(Rational(1, 4).value() == 0.25);
}

TEST_CASE("rational guards against division by zero and overflow") {
  CHECK_THROWS_AS(Rational(1, 0), infodec::argument_error);
  CHECK_THROWS_AS(Rational(1, 2) / Rational(0), infodec::argument_error);
  Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big * big, infodec::evaluation_error);
  // Reduction keeps results representable even when intermediates are wide.
  CHECK(Rational(INT64_MAX, 2) * Rational(2, INT64_MAX) == Rational(1));
}
