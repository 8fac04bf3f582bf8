#include <doctest.h>

#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "sqfap/rational.hpp"

using namespace sqfap;

TEST_SUITE("rational") {

TEST_CASE("normalization and printing") {
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(Rational(0, -5).str() == "0/1");
    CHECK(Rational(7).str() == "7/1");
    CHECK(Rational(-4, 2) == Rational(-2));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic") {
    const Rational a(1, 2), b(-1, 3);
    CHECK(a + b == Rational(1, 6));
    CHECK(a - b == Rational(5, 6));
    CHECK(a * b == Rational(-1, 6));
    CHECK(a / b == Rational(-3, 2));
    CHECK(-a == Rational(-1, 2));
    CHECK(b < a);
    CHECK_FALSE(a < a);
    CHECK(Rational(5, 2).to_double() == 2.5);
    CHECK(Rational(0).is_zero());
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("overflow is reported, never wrapped") {
    const std::int64_t big = std::numeric_limits<std::int64_t>::max();
    CHECK_THROWS_AS(Rational(big) + Rational(1), std::overflow_error);
    CHECK_THROWS_AS(Rational(big) * Rational(2), std::overflow_error);
    CHECK_THROWS_AS(-Rational(std::numeric_limits<std::int64_t>::min()), std::overflow_error);
    CHECK(Rational(big, 3) * Rational(3, big) == Rational(1));
}

TEST_CASE("parse round trip") {
    CHECK(Rational::parse("5/2") == Rational(5, 2));
    CHECK(Rational::parse("-1/2") == Rational(-1, 2));
    CHECK(Rational::parse("4") == Rational(4));
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Rational r(static_cast<std::int64_t>(rng() % 2'000'001) - 1'000'000,
                         static_cast<std::int64_t>(rng() % 1'000'000) + 1);
        REQUIRE(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("field laws on random values against cross-multiplication") {
    std::mt19937_64 rng(11);
    auto draw = [&] {
        return Rational(static_cast<std::int64_t>(rng() % 20'001) - 10'000,
                        static_cast<std::int64_t>(rng() % 10'000) + 1);
    };
    for (int i = 0; i < 2000; ++i) {
        const Rational x = draw(), y = draw(), z = draw();
        REQUIRE((x + y) + z == x + (y + z));
        REQUIRE(x * (y + z) == x * y + x * z);
        REQUIRE(x - x == Rational(0));
        REQUIRE(std::gcd(x.num(), x.den()) == 1);
        REQUIRE(x.den() > 0);
        const __int128 lhs = static_cast<__int128>(x.num()) * y.den();
        const __int128 rhs = static_cast<__int128>(y.num()) * x.den();
        REQUIRE((x < y) == (lhs < rhs));
    }
}

}  // TEST_SUITE
