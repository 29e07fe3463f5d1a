#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/error.hpp"
#include "germ/parser.hpp"

using namespace germ;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

BiPoly refold(const std::vector<std::pair<BiPoly, int>>& fs) {
    BiPoly p = BiPoly::constant(Scalar(1));
    for (auto& [f, e] : fs) p = p * f.pow((unsigned)e);
    return p;
}

std::string code_of(const std::string& text) {
    try {
        parse_poly(text);
    } catch (const GermError& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("basic expressions") {
    CHECK(parse_poly("x^2 - y^3") == X.pow(2) - Y.pow(3));
    CHECK(parse_poly("x*y") == X * Y);
    CHECK(parse_poly("(x - y)^2 * (x + i*y)") ==
          (X - Y).pow(2) * (X + Y.scaled(Scalar::i())));
    CHECK(parse_poly("1/2*x + 3*y") ==
          X.scaled(Scalar(Rat(1, 2))) + Y.scaled(Scalar(3)));
    CHECK(parse_poly("-x") == -X);
    CHECK(parse_poly("- - x") == X);
    CHECK(parse_poly("x^0*y") == Y);
    CHECK(parse_poly("x - x") == BiPoly());
}

TEST_CASE("syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_poly("x^y"), doctest::Contains("position 3"), GermError);
    CHECK(code_of("x^y") == "input.parse");
    CHECK(code_of("x^-2") == "input.parse");
    CHECK(code_of("2x") == "input.parse");     // juxtaposition disallowed
    CHECK(code_of("x*") == "input.parse");
    CHECK(code_of("(x") == "input.parse");
    CHECK(code_of("1/0*x") == "input.parse");
    CHECK(code_of("x y") == "input.parse");
    CHECK(code_of("") == "input.parse");
}

TEST_CASE("non-vanishing input is rejected") {
    CHECK(code_of("x + 1") == "input.not-a-germ");
    CHECK(code_of("1") == "input.not-a-germ");
    CHECK(code_of("(x+1)*(y+1)") == "input.not-a-germ");
}

TEST_CASE("factored form keeps the given factorization") {
    auto fs = parse_factored("x^2*(x - y)");
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].first == X);
    CHECK(fs[0].second == 2);
    CHECK(fs[1].first == X - Y);
    CHECK(fs[1].second == 1);
    CHECK(refold(fs) == parse_poly("x^2*(x - y)"));

    fs = parse_factored("(x^2 - y^3)^2");
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].second == 2);

    // sums, units and unfoldable signs collapse to a single factor
    CHECK(parse_factored("x^2 - y^3").size() == 1);
    CHECK(parse_factored("(1 + y)*(x^2 - y^3)").size() == 1);
    CHECK(parse_factored("-x^2").size() == 1);
    CHECK(parse_factored("-x^2")[0].first == -X.pow(2));

    fs = parse_factored("-x^2*(x - y)");
    REQUIRE(fs.size() == 2);
    CHECK(refold(fs) == parse_poly("-x^2*(x - y)"));
}
