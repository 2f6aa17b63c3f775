#include "doctest.h"
#include "oktrace/errors.hpp"
#include "oktrace/parse.hpp"

using namespace oktrace;

namespace {

IntPoly P(std::vector<long> low_to_high) {
    std::vector<mpz_class> c(low_to_high.begin(), low_to_high.end());
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("expression form") {
    CHECK(parse_polynomial("x^3+x-6") == P({-6, 1, 0, 1}));
    CHECK(parse_polynomial("x^2-2") == P({-2, 0, 1}));
    CHECK(parse_polynomial("3x^2 - 2*x + 1") == P({1, -2, 3}));
    CHECK(parse_polynomial("  x ^ 2  -  2 ") == P({-2, 0, 1}));
    CHECK(parse_polynomial("-x^2+x") == P({0, 1, -1}));
    CHECK(parse_polynomial("7") == P({7}));
    CHECK(parse_polynomial("x") == P({0, 1}));
    CHECK(parse_polynomial("2x") == P({0, 2}));
    CHECK(parse_polynomial("x^2+x+x") == P({0, 2, 1}));  // accumulating terms
    CHECK(parse_polynomial("x^4+x^3-x+1") == P({1, -1, 0, 1, 1}));
}

TEST_CASE("bracket list form is high to low") {
    CHECK(parse_polynomial("[1, 0, 1, -6]") == P({-6, 1, 0, 1}));
    CHECK(parse_polynomial("[1,0,-2]") == P({-2, 0, 1}));
    CHECK(parse_polynomial("[5]") == P({5}));
    CHECK(parse_polynomial("[ 1 , -1 ]") == P({-1, 1}));
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_polynomial(""), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x^"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x^^2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("[1, 2"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("[]"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x+y"), parse_error);
    CHECK_THROWS_AS(parse_polynomial("x^99999"), parse_error);  // exponent cap
    CHECK_THROWS_AS(parse_polynomial("1 2"), parse_error);
    try {
        parse_polynomial("x^3+@");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.position == 4);  // the offending '@'
    }
}

TEST_CASE("parse_monic_polynomial enforces degree and leading coefficient") {
    CHECK(parse_monic_polynomial("x^2-2") == P({-2, 0, 1}));
    CHECK_THROWS_AS(parse_monic_polynomial("7"), parse_error);
    CHECK_THROWS_AS(parse_monic_polynomial("2x^2-1"), parse_error);
    CHECK_THROWS_AS(parse_monic_polynomial("-x^3+1"), parse_error);
    try {
        parse_monic_polynomial("2x^2-1");
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("monic") != std::string::npos);
    }
}

TEST_CASE("poly_to_text canonical rendering") {
    CHECK(poly_to_text(P({-6, 1, 0, 1})) == "x^3+x-6");
    CHECK(poly_to_text(P({-2, 0, 1})) == "x^2-2");
    CHECK(poly_to_text(P({0, 1, -1})) == "-x^2+x");
    CHECK(poly_to_text(P({1, -2, 3})) == "3x^2-2x+1");
    CHECK(poly_to_text(P({5})) == "5");
    CHECK(poly_to_text(P({})) == "0");
    CHECK(poly_to_text(P({0, 1, 1}), "a") == "a^2+a");
    CHECK(poly_to_text(P({-1, 1})) == "x-1");
}

TEST_CASE("parse and render round trip") {
    for (const char* s : {"x^3+x-6", "x^2-2", "-x^2+x", "3x^2-2x+1", "x-1",
                          "x^4+x^3-x+1", "5"}) {
        IntPoly f = parse_polynomial(s);
        CHECK(poly_to_text(f) == s);
        CHECK(parse_polynomial(poly_to_text(f)) == f);
    }
}
