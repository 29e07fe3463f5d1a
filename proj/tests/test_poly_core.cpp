#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/bipoly.hpp"

#include <random>

using namespace germ;

namespace {

BiPoly X() { return BiPoly::x(); }
BiPoly Y() { return BiPoly::y(); }
BiPoly C(long n) { return BiPoly::constant(Scalar(n)); }

} // namespace

TEST_CASE("scalar field arithmetic") {
    Scalar a(Rat(3), Rat(-2)); // 3 - 2i
    Scalar b = Scalar::i();
    CHECK(a * inv(a) == Scalar(1));
    CHECK(b * b == Scalar(-1));
    CHECK((a / b) * b == a);
    CHECK(a.conj().conj() == a);
    CHECK(Scalar(Rat(1, 2)).norm() == Rat(1, 4));
}

TEST_CASE("bipoly ring basics") {
    BiPoly f = X() * X() - Y() * Y() * Y(); // x^2 - y^3
    CHECK(f.order() == 2);
    CHECK(f.deg_x() == 2);
    CHECK(f.deg_y() == 3);
    CHECK(f.coeff(2, 0) == Scalar(1));
    CHECK(f.coeff(0, 3) == Scalar(-1));
    CHECK((f - f).zero());
    CHECK(f.pow(2) == f * f);
    CHECK(f.deriv_x() == C(2) * X());
}

TEST_CASE("squarefree decomposition") {
    SUBCASE("x^2 (x - y)") {
        BiPoly f = X() * X() * (X() - Y());
        auto d = squarefree_decompose(f);
        REQUIRE(d.parts.size() == 2);
        CHECK(d.parts[0].first == (X() - Y()).unit_normal());
        CHECK(d.parts[0].second == 1);
        CHECK(d.parts[1].first == X().unit_normal());
        CHECK(d.parts[1].second == 2);
    }
    SUBCASE("x^2 - y^2 stays whole") {
        BiPoly f = X() * X() - Y() * Y();
        auto d = squarefree_decompose(f);
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].second == 1);
        CHECK(d.parts[0].first == f.unit_normal());
    }
    SUBCASE("(x^2 - y^3)^2") {
        BiPoly cusp = X() * X() - Y() * Y() * Y();
        auto d = squarefree_decompose(cusp * cusp);
        REQUIRE(d.parts.size() == 1);
        CHECK(d.parts[0].second == 2);
        CHECK(d.parts[0].first == cusp.unit_normal());
    }
}

TEST_CASE("squarefree reconstruction property") {
    std::mt19937_64 rng(7);
    auto small_factor = [&]() {
        // a random small irreducible-ish factor
        switch (rng() % 5) {
        case 0: return X();
        case 1: return X() - Y();
        case 2: return X() + Y();
        case 3: return X() * X() - Y() * Y() * Y();
        default: return X() - Y() * Y();
        }
    };
    for (int iter = 0; iter < 25; ++iter) {
        BiPoly f = C(1);
        int nf = 1 + rng() % 4;
        for (int i = 0; i < nf; ++i) {
            int mult = 1 + rng() % 3;
            f = f * small_factor().pow(mult);
        }
        auto d = squarefree_decompose(f);
        BiPoly prod = C(1);
        for (auto& [p, m] : d.parts) prod = prod * p.pow(m);
        // equal up to a nonzero scalar
        CHECK(prod.unit_normal() == f.unit_normal());
    }
}

TEST_CASE("resultant_x") {
    BiPoly cusp = X() * X() - Y() * Y() * Y();
    SUBCASE("res(x, x^2-y^3) = -y^3 up to sign") {
        YPoly r = resultant_x(X(), cusp);
        REQUIRE(order_at_zero(r).has_value());
        CHECK(*order_at_zero(r) == 3);
        CHECK(r.degree() == 3);
    }
    SUBCASE("res(x-y, x+y)") {
        YPoly r = resultant_x(X() - Y(), X() + Y());
        CHECK(r.degree() == 1);
        CHECK(*order_at_zero(r) == 1);
        // the 1x1 elimination gives 2y up to sign
        CHECK((r.c[1] == Scalar(2) || r.c[1] == Scalar(-2)));
    }
    SUBCASE("res(x^2-y^3, x^3-y^2) has y-order 4") {
        YPoly r = resultant_x(cusp, X() * X() * X() - Y() * Y());
        CHECK(*order_at_zero(r) == 4);
    }
    SUBCASE("swap symmetry up to sign") {
        BiPoly p = X() * X() - Y() * Y() * Y() + X() * Y();
        BiPoly q = X() * X() * X() - Y() * Y() + C(2) * X() * Y();
        YPoly a = resultant_x(p, q), b = resultant_x(q, p);
        bool same = (a == b) || (a == -b);
        CHECK(same);
    }
    SUBCASE("degenerate input flagged") {
        CHECK_THROWS_AS(resultant_x(Y(), Y() * Y()), GermError);
    }
}

TEST_CASE("order_at_zero") {
    YPoly p(std::vector<Scalar>{Scalar(0), Scalar(0), Scalar(0), Scalar(4)});
    CHECK(*order_at_zero(p) == 3);
    CHECK(!order_at_zero(YPoly()).has_value());
    YPoly q(std::vector<Scalar>{Scalar(0), Scalar(0), Scalar(1), Scalar(0), Scalar(0), Scalar(1)});
    CHECK(*order_at_zero(q) == 2);
}

TEST_CASE("ensure_transverse") {
    SUBCASE("already transverse") {
        BiPoly cusp = X() * X() - Y() * Y() * Y();
        auto [g, c] = ensure_transverse(cusp);
        CHECK(c == Scalar(0));
        CHECK(g == cusp);
    }
    SUBCASE("y^2 - x^3 needs a shear") {
        BiPoly f = Y() * Y() - X() * X() * X();
        auto [g, c] = ensure_transverse(f);
        CHECK(c == Scalar(1));
        CHECK(g == f.shear(Scalar(1)));
        CHECK(!g.lowest_form_at_1t().eval(Scalar(0)).is_zero());
    }
    SUBCASE("xy sheared off the axis") {
        BiPoly f = X() * Y();
        auto [g, c] = ensure_transverse(f);
        CHECK(c == Scalar(1));
        // order preserved
        CHECK(g.order() == f.order());
    }
    SUBCASE("non-germ rejected") {
        CHECK_THROWS_AS(ensure_transverse(C(1) + X()), GermError);
    }
}

TEST_CASE("gcd sanity") {
    BiPoly a = (X() - Y()) * (X() + Y());
    BiPoly b = (X() - Y()) * X();
    CHECK(bipoly_gcd(a, b) == (X() - Y()).unit_normal());
    CHECK(bipoly_gcd(a, C(3)).total_degree() == 0);
}

TEST_CASE("shear preserves order") {
    BiPoly f = Y() * Y() - X() * X() * X();
    for (long c = -3; c <= 3; ++c)
        CHECK(f.shear(Scalar(c)).order() == f.order());
}
