#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "support.hpp"

using namespace bcs;

TEST_CASE("rational rendering omits unit denominators") {
    CHECK(to_string(Rational(3, 4)) == "3/4");
    CHECK(to_string(Rational(-3, 4)) == "-3/4");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(to_string(Rational(7)) == "7");
    CHECK(to_string(Rational(-7)) == "-7");
    CHECK(to_string(Rational(6, 8)) == "3/4");
    CHECK(to_string(Rational(-6, 8)) == "-3/4");
}

TEST_CASE("rational parsing accepts p, -p, p/q and normalizes") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-5") == Rational(-5));
    CHECK(parse_rational("0") == Rational(0));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("123456789123456789/2") ==
          Rational(Int("123456789123456789"), 2));
}

TEST_CASE("rational parsing rejects malformed text") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("--2"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/"), ParseError);
    CHECK_THROWS_AS(parse_rational("/3"), ParseError);
    CHECK_THROWS_AS(parse_rational("3/4x"), ParseError);
    CHECK_THROWS_AS(parse_rational("+3"), ParseError);
    CHECK_THROWS_AS(parse_rational(" 3"), ParseError);
    CHECK_THROWS_AS(parse_rational("3 "), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
}

TEST_CASE("parse inverts rendering on random rationals") {
    std::mt19937_64 rng(20260823);
    for (int trial = 0; trial < 500; ++trial) {
        const long long p = static_cast<long long>(rng() % 2000001) - 1000000;
        const long long q = static_cast<long long>(rng() % 1000000) + 1;
        const Rational r(p, q);
        CHECK(parse_rational(to_string(r)) == r);
    }
}

TEST_CASE("pow2 covers negative exponents") {
    CHECK(pow2(0) == Rational(1));
    CHECK(pow2(1) == Rational(2));
    CHECK(pow2(5) == Rational(32));
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(-30) == Rational(1, 1073741824));
}

TEST_CASE("largest power of one half below a bound") {
    CHECK(largest_power_of_half_below(Rational(1)) == Rational(1, 2));
    CHECK(largest_power_of_half_below(Rational(1, 2)) == Rational(1, 4));
    CHECK(largest_power_of_half_below(Rational(3, 8)) == Rational(1, 4));
    CHECK(largest_power_of_half_below(Rational(5)) == Rational(4));
    CHECK(largest_power_of_half_below(Rational(1, 1000)) == Rational(1, 1024));
    CHECK_THROWS_AS(largest_power_of_half_below(Rational(0)), DomainError);
    CHECK_THROWS_AS(largest_power_of_half_below(Rational(-1)), DomainError);
}

TEST_CASE("largest power of one half: strictly below, within factor two") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const long long p = static_cast<long long>(rng() % 1000000) + 1;
        const long long q = static_cast<long long>(rng() % 1000000) + 1;
        const Rational bound(p, q);
        const Rational r = largest_power_of_half_below(bound);
        CHECK(r < bound);
        CHECK(bound <= Rational(2) * r);
        // power of two: numerator or denominator is 1 and the other a 2-power
        const Int num = boost::multiprecision::numerator(r);
        const Int den = boost::multiprecision::denominator(r);
        CHECK(((num == 1 && (den & (den - 1)) == 0) ||
               (den == 1 && (num & (num - 1)) == 0)));
    }
}

TEST_CASE("closed interval construction and membership") {
    const ClosedInterval iv(Rational(1, 4), Rational(3, 4));
    CHECK(iv.diameter() == Rational(1, 2));
    CHECK(iv.contains(Rational(1, 4)));
    CHECK(iv.contains(Rational(3, 4)));
    CHECK(iv.contains(Rational(1, 2)));
    CHECK_FALSE(iv.contains(Rational(0)));
    CHECK(iv.contains(ClosedInterval(Rational(1, 4), Rational(1, 2))));
    CHECK_FALSE(iv.contains(ClosedInterval(Rational(0), Rational(1, 2))));

    const ClosedInterval point(Rational(1, 3), Rational(1, 3));
    CHECK(point.diameter() == 0);

    CHECK_THROWS_AS(ClosedInterval(Rational(1), Rational(0)), DomainError);
}

TEST_CASE("intersection is symmetric and includes shared endpoints") {
    const ClosedInterval a(Rational(0), Rational(1));
    const ClosedInterval b(Rational(1), Rational(2));
    const ClosedInterval c(Rational(3, 2), Rational(3));
    const ClosedInterval d(Rational(5), Rational(6));
    CHECK(a.intersects(b));
    CHECK(b.intersects(a));
    CHECK(b.intersects(c));
    CHECK_FALSE(a.intersects(c));
    CHECK_FALSE(a.intersects(d));
}

TEST_CASE("translation shifts both endpoints") {
    const ClosedInterval iv(Rational(1, 4), Rational(1, 2));
    const ClosedInterval moved = iv.translated(Rational(-1, 4));
    CHECK(moved.lo() == 0);
    CHECK(moved.hi() == Rational(1, 4));
    CHECK(moved.diameter() == iv.diameter());
}

TEST_CASE("interval distance vanishes exactly on intersection") {
    const ClosedInterval a(Rational(0), Rational(1));
    const ClosedInterval b(Rational(2), Rational(3));
    CHECK(interval_distance(a, b) == Rational(1));
    CHECK(interval_distance(b, a) == Rational(1));
    CHECK(interval_distance(a, ClosedInterval(Rational(1), Rational(2))) == 0);
    CHECK(interval_distance(a, ClosedInterval(Rational(1, 2), Rational(2))) == 0);
}

TEST_CASE("hull is the tightest enclosing interval, order-independent") {
    CHECK_THROWS_AS(hull({}), EmptyFamily);
    CHECK_THROWS_AS(hull_diameter({}), EmptyFamily);

    std::vector<ClosedInterval> pieces = {
        ClosedInterval(Rational(1, 2), Rational(3, 4)),
        ClosedInterval(Rational(0), Rational(1, 8)),
        ClosedInterval(Rational(1, 4), Rational(1, 3)),
    };
    const ClosedInterval h = hull(pieces);
    CHECK(h.lo() == 0);
    CHECK(h.hi() == Rational(3, 4));
    CHECK(hull_diameter(pieces) == Rational(3, 4));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(pieces.begin(), pieces.end(), rng);
        CHECK(hull(pieces) == h);
    }
}
