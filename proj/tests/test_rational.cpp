#include "setid/errors.hpp"
#include "setid/rational.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace setid;

TEST_CASE("decimal strings parse to exact ratios") {
    CHECK(parse_rat("0.338") == helpers::rq(338, 1000));
    CHECK(parse_rat("0.662") == helpers::rq(331, 500));
    CHECK(parse_rat(".5") == helpers::rq(1, 2));
    CHECK(parse_rat("2.") == Rat(2));
    CHECK(parse_rat("-0.25") == helpers::rq(-1, 4));
    CHECK(parse_rat("+3") == Rat(3));
}

TEST_CASE("fractions parse and canonicalize") {
    CHECK(parse_rat("29564/87525") == helpers::rq(29564, 87525));
    CHECK(parse_rat("2/4") == helpers::rq(1, 2));
    CHECK(parse_rat("-6/4") == helpers::rq(-3, 2));
    CHECK(rat_str(parse_rat("2/4")) == "1/2");
    CHECK(rat_str(parse_rat("3")) == "3");
}

TEST_CASE("garbage is rejected") {
    CHECK_THROWS_AS(parse_rat(""), ParseError);
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("1.2.3"), ParseError);
    CHECK_THROWS_AS(parse_rat("1e-3"), ParseError);
    CHECK_THROWS_AS(parse_rat("1/ 2 x"), ParseError);
}

TEST_CASE("rounding is exact and ties go away from zero") {
    CHECK(rat_round(helpers::rq(29564, 87525), 3) == helpers::rq(338, 1000));
    CHECK(rat_round(helpers::rq(57961, 87525), 3) == helpers::rq(662, 1000));
    CHECK(rat_round(helpers::rq(1, 2), 0) == Rat(1));
    CHECK(rat_round(helpers::rq(-1, 2), 0) == Rat(-1));
    CHECK(rat_round(helpers::rq(12345, 100000), 4) == helpers::rq(1235, 10000));
    CHECK(rat_round(helpers::rq(28706, 116231), 4) == helpers::rq(2470, 10000));
}

TEST_CASE("round trip through text") {
    const Rat q = parse_rat("28706/116231");
    CHECK(parse_rat(rat_str(q)) == q);
    CHECK(rat_double(helpers::rq(1, 2)) == 0.5);
}
