#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/error.hpp"
#include "germ/invariants.hpp"

using namespace germ;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

bool same_invariant(const GermInvariant& a, const GermInvariant& b) {
    if (a.germ_order != b.germ_order) return false;
    if (a.branches.size() != b.branches.size()) return false;
    for (size_t k = 0; k < a.branches.size(); ++k) {
        if (a.branches[k].d != b.branches[k].d) return false;
        if (a.branches[k].m != b.branches[k].m) return false;
        if (!(a.branches[k].pairs == b.branches[k].pairs)) return false;
    }
    return a.contact == b.contact && a.self_contacts == b.self_contacts &&
           a.intersections == b.intersections;
}

} // namespace

TEST_CASE("puiseux pair convention") {
    auto p = puiseux_pairs({Rat(3, 2)}, 2);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == PuiseuxPair{2, 3});
    p = puiseux_pairs({Rat(5, 3)}, 3);
    REQUIRE(p.size() == 1);
    CHECK(p[0] == PuiseuxPair{3, 5});
    p = puiseux_pairs({Rat(3, 2), Rat(7, 4)}, 4);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == PuiseuxPair{2, 3});
    CHECK(p[1] == PuiseuxPair{2, 7});
    CHECK(puiseux_pairs({}, 1).empty());
    bool threw = false;
    try {
        puiseux_pairs({Rat(3, 2)}, 4);
    } catch (const GermError& e) {
        threw = true;
        CHECK(e.code() == "invariants.pairs");
    }
    CHECK(threw);
}

TEST_CASE("branch contact on simple pairs") {
    Tower tw;
    Rat trunc(5);
    auto cusp = puiseux_expand(X.pow(2) - Y.pow(3), trunc, tw);
    auto l1 = puiseux_expand(X - Y, trunc, tw);
    auto l2 = puiseux_expand(X - Y.scaled(Scalar(2)), trunc, tw);
    auto l3 = puiseux_expand(X - Y - Y.pow(2), trunc, tw);
    CHECK(branch_contact(cusp[0], l1[0], tw) == Rat(1));
    CHECK(branch_contact(l1[0], l2[0], tw) == Rat(1));
    CHECK(branch_contact(l1[0], l3[0], tw) == Rat(2));
    CHECK(intersection_multiplicity(l1[0], l2[0], tw) == 1);
}

TEST_CASE("intersection multiplicities with the resultant oracle") {
    // x = 0 against the cusp: resultant_x(x, x^2 - y^3) has y-order 3
    GermAnalysis A =
        analyze_germ_factored({{X, 1}, {X.pow(2) - Y.pow(3), 1}});
    REQUIRE(A.branches.size() == 2);
    CHECK(A.invariant.intersections[0][1] == 3);

    // the cusp against the transposed cusp: 4 (oracle checked inside)
    GermAnalysis B = analyze_germ_factored(
        {{X.pow(2) - Y.pow(3), 1}, {Y.pow(2) - X.pow(3), 1}});
    REQUIRE(B.branches.size() == 2);
    CHECK(B.invariant.intersections[0][1] == 4);
    CHECK(B.invariant.germ_order == 4);

    // two transverse smooth lines
    GermAnalysis C = analyze_germ_factored({{X - Y, 1}, {X + Y, 1}});
    CHECK(C.invariant.intersections[0][1] == 1);
}

TEST_CASE("milnor and delta consistency") {
    auto c = milnor_delta_check(X.pow(2) - Y.pow(3));
    CHECK(c.mu == 2);
    CHECK(c.delta == 1);
    CHECK(c.r == 1);
    CHECK(c.consistent);

    c = milnor_delta_check(X.pow(3) - Y.pow(5));
    CHECK(c.mu == 8);
    CHECK(c.delta == 4);
    CHECK(c.consistent);

    c = milnor_delta_check((X.pow(2) - Y.pow(3)) * (X - Y));
    CHECK(c.mu == 5);
    CHECK(c.delta == 3);
    CHECK(c.r == 2);
    CHECK(c.consistent);

    c = milnor_delta_check(X * (X.pow(2) - Y.pow(2))); // D4
    CHECK(c.mu == 4);
    CHECK(c.delta == 3);
    CHECK(c.r == 3);
    CHECK(c.consistent);

    c = milnor_delta_check(X.pow(2) + Y.pow(2)); // A1
    CHECK(c.mu == 1);
    CHECK(c.r == 2);
    CHECK(c.consistent);

    c = milnor_delta_check(X - Y); // smooth
    CHECK(c.mu == 0);
    CHECK(c.delta == 0);
    CHECK(c.consistent);

    bool threw = false;
    try {
        milnor_delta_check(X.pow(2) * (X - Y));
    } catch (const GermError& e) {
        threw = true;
        CHECK(e.code() == "invariants.non-reduced");
    }
    CHECK(threw);
}

TEST_CASE("germ invariant pipeline") {
    GermInvariant cusp = germ_invariant(X.pow(2) - Y.pow(3));
    REQUIRE(cusp.branches.size() == 1);
    CHECK(cusp.branches[0].d == 1);
    CHECK(cusp.branches[0].m == 2);
    CHECK(cusp.branches[0].pairs == std::vector<PuiseuxPair>{{2, 3}});
    CHECK(cusp.germ_order == 2);
    CHECK(cusp.self_contacts[0] == std::vector<Rat>{Rat(3, 2)});

    GermInvariant two = germ_invariant(X.pow(2) * (X - Y));
    REQUIRE(two.branches.size() == 2);
    CHECK(two.branches[0].d + two.branches[1].d == 3);
    CHECK(two.branches[0].m == 1);
    CHECK(two.branches[1].m == 1);
    CHECK(two.intersections[0][1] == 1);
    CHECK(two.germ_order == 3);

    GermInvariant mix = germ_invariant((X.pow(2) - Y.pow(3)) * (X - Y));
    REQUIRE(mix.branches.size() == 2);
    CHECK(mix.intersections[0][1] == 2);
    CHECK(mix.contact[0][1] == Rat(1));
    CHECK(mix.germ_order == 3);
}

TEST_CASE("transverse normalization reaches the same invariant") {
    GermInvariant a = germ_invariant(X.pow(2) - Y.pow(3));
    GermInvariant b = germ_invariant(Y.pow(2) - X.pow(3));
    CHECK(same_invariant(a, b));
}

TEST_CASE("invariant stable under scrambling") {
    BiPoly f1 = X.pow(2) - Y.pow(3);
    BiPoly f2 = X - Y;
    GermInvariant a = analyze_germ_factored({{f1, 1}, {f2, 1}}).invariant;
    GermInvariant b = analyze_germ_factored({{f2, 1}, {f1, 1}}).invariant;
    GermInvariant c = germ_invariant(f1 * f2);
    GermInvariant d = germ_invariant((f1 * f2).scaled(Scalar(Rat(-3), Rat(2))));
    CHECK(same_invariant(a, b));
    CHECK(same_invariant(a, c));
    CHECK(same_invariant(a, d));
}

TEST_CASE("exponent sets of the definition") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    REQUIRE(A.branches.size() == 2);
    for (auto& b : A.branches) {
        if (b.ram == 2) {
            CHECK(b.lambda_p == std::vector<Rat>{Rat(3, 2)});
            CHECK(b.lambda_all == std::vector<Rat>{Rat(1), Rat(3, 2)});
            CHECK(b.lambda_free == std::vector<Rat>{Rat(1)});
        } else {
            CHECK(b.lambda_p.empty());
            CHECK(b.lambda_all == std::vector<Rat>{Rat(1)});
            CHECK(b.lambda_free == std::vector<Rat>{Rat(1)});
        }
    }
    // single branch: no cross contacts, free set empty
    GermAnalysis B = analyze_germ(X.pow(2) - Y.pow(3));
    CHECK(B.branches[0].lambda_all == std::vector<Rat>{Rat(3, 2)});
    CHECK(B.branches[0].lambda_free.empty());
}

TEST_CASE("three-branch contact structure") {
    BiPoly f1 = X.pow(2) - Y.pow(3);
    BiPoly f2 = X.pow(2) - Y.pow(3) - Y.pow(4);
    BiPoly f3 = X - Y;
    GermAnalysis A = analyze_germ_factored({{f1, 1}, {f2, 1}, {f3, 1}});
    REQUIRE(A.branches.size() == 3);
    // canonical order puts the smooth branch first (m=1 key sorts lowest)
    std::vector<Rat> cross;
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l) cross.push_back(A.invariant.contact[k][l]);
    std::sort(cross.begin(), cross.end());
    CHECK(cross == std::vector<Rat>{Rat(1), Rat(1), Rat(5, 2)});
    long imax = 0;
    for (int k = 0; k < 3; ++k)
        for (int l = k + 1; l < 3; ++l)
            imax = std::max(imax, A.invariant.intersections[k][l]);
    CHECK(imax == 8); // the two cusps meet with multiplicity 8
}
