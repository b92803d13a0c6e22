#include <catch_amalgamated.hpp>

#include "knapgap/rational.hpp"

using namespace knapgap;

TEST_CASE("rational parsing and formatting round-trip") {
    CHECK(to_string(Rational(5, 3)) == "5/3");
    CHECK(to_string(Rational(4, 2)) == "2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(*parse_rational("5/3") == Rational(5, 3));
    CHECK(*parse_rational("7") == 7);
    CHECK(*parse_rational("-3/6") == Rational(-1, 2));
    CHECK(!parse_rational("").has_value());
    CHECK(!parse_rational("1/0").has_value());
    CHECK(!parse_rational("a/2").has_value());
    CHECK(!parse_rational("1.5").has_value());
}

TEST_CASE("floor and ceiling are exact on both signs") {
    CHECK(floor_int(Rational(7, 2)) == 3);
    CHECK(ceil_int(Rational(7, 2)) == 4);
    CHECK(floor_int(Rational(-7, 2)) == -4);
    CHECK(ceil_int(Rational(-7, 2)) == -3);
    CHECK(floor_int(Rational(6)) == 6);
    CHECK(ceil_int(Rational(6)) == 6);
}

TEST_CASE("count_fractional inspects coordinates exactly") {
    CHECK(count_fractional({Rational(1), Rational(2, 3)}) == 1);
    CHECK(count_fractional({Rational(0), Rational(0), Rational(5)}) == 0);
    CHECK(count_fractional({Rational(1, 2), Rational(3, 2), Rational(2)}) == 2);
}

TEST_CASE("arithmetic stays in lowest terms with positive denominator") {
    const Rational q = Rational(2, 4) + Rational(1, 4);
    CHECK(numerator(q) == 3);
    CHECK(denominator(q) == 4);
    const Rational neg = Rational(1, -2);
    CHECK(denominator(neg) > 0);
    CHECK(neg == Rational(-1, 2));
}
