#include <catch2/catch_amalgamated.hpp>

#include <l1s/exceptions.hpp>
#include <l1s/rational.hpp>

#include "support.hpp"

using namespace l1s;

TEST_CASE("parseRational reads integers and fractions in lowest terms")
{
    CHECK(parseRational("3") == Rational(3));
    CHECK(parseRational("-7") == Rational(-7));
    CHECK(parseRational("+2") == Rational(2));
    CHECK(parseRational("3/4") == Rational(3) / 4);
    CHECK(parseRational("-3/4") == Rational(-3) / 4);

    // Non-canonical inputs normalize: lowest terms, positive denominator.
    CHECK(toString(parseRational("3/6")) == "1/2");
    CHECK(toString(parseRational("1/-2")) == "-1/2");
    CHECK(toString(parseRational("-4/-6")) == "2/3");
    CHECK(toString(parseRational("0/5")) == "0");

    // Arithmetic on parsed values is exact even when the inputs were not
    // canonical; this is what broke naive string construction.
    CHECK(parseRational("2/4") + parseRational("1/2") == Rational(1));
    CHECK(parseRational("2/4") == parseRational("1/2"));
}

TEST_CASE("parseRational rejects malformed input")
{
    CHECK_THROWS_AS(parseRational(""), ParseException);
    CHECK_THROWS_AS(parseRational("abc"), ParseException);
    CHECK_THROWS_AS(parseRational("1.5"), ParseException);
    CHECK_THROWS_AS(parseRational("1/0"), ParseException);
    CHECK_THROWS_AS(parseRational("1/"), ParseException);
    CHECK_THROWS_AS(parseRational("/2"), ParseException);
    CHECK_THROWS_AS(parseRational("1/2/3"), ParseException);
    CHECK_THROWS_AS(parseRational("1 /2"), ParseException);
}

TEST_CASE("toString emits the canonical form parseRational accepts")
{
    for (const std::string s : {"0", "5", "-5", "1/2", "-22/7", "355/113"})
        CHECK(toString(parseRational(s)) == s);
}

TEST_CASE("double conversions")
{
    CHECK(toDouble(parseRational("1/2")) == 0.5);
    CHECK(toDouble(parseRational("-3")) == -3.0);

    // Every finite double is an exact rational, and the round trip is exact.
    for (const double x : {0.5, -0.125, 3.0, 0.1, 1e-9, -2.6180339887})
        CHECK(toDouble(rationalFromDouble(x)) == x);
    CHECK(rationalFromDouble(0.25) == Rational(1) / 4);
}

TEST_CASE("parseRationalVector splits on the separator")
{
    const VectorXr v = parseRationalVector("1,1/2,-3");
    REQUIRE(v.size() == 3);
    CHECK(v(0) == 1);
    CHECK(v(1) == Rational(1) / 2);
    CHECK(v(2) == -3);

    const VectorXr w = parseRationalVector("4 2/3", ' ');
    REQUIRE(w.size() == 2);
    CHECK(w(1) == Rational(2) / 3);

    CHECK(parseRationalVector("7").size() == 1);
    CHECK_THROWS_AS(parseRationalVector("1,,2"), ParseException);
    CHECK(toString(parseRationalVector("1,1/2,-3")) == "1,1/2,-3");
}

TEST_CASE("lexLess is a strict total order usable for canonical sorting")
{
    const VectorXr a = parseRationalVector("0,1");
    const VectorXr b = parseRationalVector("0,2");
    const VectorXr c = parseRationalVector("1,-5");
    CHECK(lexLess(a, b));
    CHECK(lexLess(b, c));
    CHECK(lexLess(a, c));
    CHECK_FALSE(lexLess(b, a));
    CHECK_FALSE(lexLess(a, a));
}

TEST_CASE("rational scalars drive Eigen exactly")
{
    const MatrixXr A = support::rmat({"1/3,1/7", "2,1/2"});
    const VectorXr x = parseRationalVector("21,14");
    const VectorXr y = A * x;
    CHECK(y(0) == 9);                  // 21/3 + 14/7 = 7 + 2
    CHECK(y(1) == 49);                 // 42 + 7

    // Accumulated sums that would drift in floating point stay exact.
    Rational tenth = parseRational("1/10");
    Rational sum = 0;
    for (int i = 0; i < 10; ++i)
        sum += tenth;
    CHECK(sum == 1);
}
