#include <doctest.h>

#include <stdexcept>

#include "zetalab/types.hpp"

using namespace zetalab;

TEST_CASE("eval params validation") {
    EvalParams p;
    CHECK_NOTHROW(p.validate());

    p.series_terms_n = 15;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.series_terms_n = 16;
    CHECK_NOTHROW(p.validate());

    p.bernoulli_order = 13;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.bernoulli_order = 26;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.bernoulli_order = 2;
    CHECK_NOTHROW(p.validate());

    p.target_abs_err = 1e-13;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("rect region validation and extents") {
    RectRegion r{-1.0, 2.0, 0.0, 10.0};
    CHECK_NOTHROW(r.validate());
    CHECK(r.width() == doctest::Approx(3.0));
    CHECK(r.height() == doctest::Approx(10.0));

    RectRegion bad{1.0, 1.0, 0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    RectRegion flipped{0.0, 1.0, 5.0, 2.0};
    CHECK_THROWS_AS(flipped.validate(), std::invalid_argument);
}

TEST_CASE("rational shift normalization") {
    RationalShift d{3, 1};
    CHECK(d.a() == 3);
    CHECK(d.b() == 1);
    CHECK(d.q() == 2);
    CHECK(d.d() == doctest::Approx(3.0));
    CHECK(d.covered_by_theorem());

    // sign moves to the numerator
    RationalShift neg{3, -2};
    CHECK(neg.a() == -3);
    CHECK(neg.b() == 2);
    CHECK(neg.q() == -5);

    CHECK_THROWS_AS(RationalShift(4, 2), std::invalid_argument);
    CHECK_THROWS_AS(RationalShift(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(RationalShift(5, 0), std::invalid_argument);
}

TEST_CASE("rational shift theorem coverage") {
    // a = b means no shift at all; |a-b| = 1 twists by a trivial character.
    CHECK_FALSE(RationalShift(1, 1).covered_by_theorem());
    CHECK_FALSE(RationalShift(2, 1).covered_by_theorem());
    CHECK_FALSE(RationalShift(1, 2).covered_by_theorem());
    CHECK(RationalShift(5, 2).covered_by_theorem());
    CHECK(RationalShift(-3, 1).covered_by_theorem());
    CHECK(RationalShift(7, 3).covered_by_theorem());
}

TEST_CASE("truncation lower bound") {
    CHECK(Truncation(2.0).z() == doctest::Approx(2.0));
    CHECK(Truncation(1e4).z() == doctest::Approx(1e4));
    CHECK_THROWS_AS(Truncation(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Truncation(0.0), std::invalid_argument);
}
