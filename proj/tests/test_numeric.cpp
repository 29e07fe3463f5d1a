#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/numeric.hpp"

#include <cmath>

using namespace germ;

namespace {

TPoly tp(const Tower& tw, std::initializer_list<long> coeffs) {
    std::vector<TF> c;
    for (long v : coeffs) c.push_back(tw.from_scalar(Scalar(v)));
    return TPoly(std::move(c));
}

std::vector<Ball> balls(std::initializer_list<long> coeffs) {
    std::vector<Ball> out;
    for (long v : coeffs) out.push_back(ball_exact(Scalar(v)));
    return out;
}

} // namespace

TEST_CASE("ball arithmetic encloses exact values") {
    set_prec_bits(128);
    Ball one = ball_exact(Scalar(1));
    Ball i = ball_exact(Scalar::i());
    Ball s = ball_add(one, i);           // 1 + i
    Ball p = ball_mul(s, ball_sub(one, i)); // (1+i)(1-i) = 2
    CHECK(p.r < MPF("1e-30"));
    CHECK(abs(p.c.re - 2) <= p.r);
    CHECK(abs(p.c.im) <= p.r);
    Ball q = ball_div(p, s); // 2/(1+i) = 1 - i
    CHECK(abs(q.c.re - 1) <= q.r);
    CHECK(abs(q.c.im + 1) <= q.r);
}

TEST_CASE("certified roots of x^2 - 2") {
    set_prec_bits(128);
    auto rd = certified_roots(balls({-2, 0, 1}));
    REQUIRE(rd.has_value());
    REQUIRE(rd->size() == 2);
    MPF r2 = sqrt(MPF(2));
    for (auto& d : *rd) {
        MPF err = abs(abs(d.z.re) - r2) + abs(d.z.im);
        CHECK(err <= d.r * 2 + MPF("1e-25"));
    }
    CHECK(((*rd)[0].z.re * (*rd)[1].z.re < 0));
}

TEST_CASE("certified roots reject unresolvable input") {
    set_prec_bits(64);
    // (x-1)(x-1-epsilon) with epsilon below working precision: the cluster
    // cannot be split into disjoint certified disks
    std::vector<Ball> c = balls({1, -2, 1});
    for (auto& b : c) b.r = MPF("1e-3");
    auto rd = certified_roots(c);
    CHECK(!rd.has_value());
}

TEST_CASE("sturm counting and isolation") {
    // (x-1)(x-2)(x+3)
    QPoly f(std::vector<Rat>{Rat(6), Rat(-7), Rat(0), Rat(1)});
    auto chain = sturm_chain(f);
    CHECK(sturm_count(chain, Rat(-10), Rat(10)) == 3);
    CHECK(sturm_count(chain, Rat(0), Rat(10)) == 2);
    CHECK(sturm_count(chain, Rat(-10), Rat(0)) == 1);
    auto ivs = isolate_real_roots(f);
    REQUIRE(ivs.size() == 3);
    Rat roots[3] = {Rat(-3), Rat(1), Rat(2)};
    for (int i = 0; i < 3; ++i) {
        CHECK(ivs[i].first < roots[i]);
        CHECK(roots[i] < ivs[i].second);
    }
}

TEST_CASE("isolation with no real roots") {
    QPoly f(std::vector<Rat>{Rat(1), Rat(0), Rat(1)}); // x^2 + 1
    CHECK(isolate_real_roots(f).empty());
}

TEST_CASE("embedding picks the lexicographically minimal root") {
    Tower tw;
    TF r2 = tw.adjoin(tp(tw, {-2, 0, 1})); // generator embeds as -sqrt(2)
    Embedding em(tw);
    CHECK(em.sign_re(r2) == -1);
    CHECK(em.sign_im(r2) == 0);
    auto a = em.approx(r2);
    CHECK(std::abs(a.real() + std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(a.imag()) < 1e-12);
    // -r2 is the positive square root of two
    CHECK(em.is_positive_real(-r2));
    CHECK(em.is_positive_real(r2 * r2));
    CHECK(!em.is_positive_real(r2));
    CHECK(em.compare(r2 * r2, TF(2)) == 0);
}

TEST_CASE("real-part ties resolved exactly") {
    Tower tw;
    // x^2 - 2x + 2 has roots 1 +- i: equal real parts
    TF g = tw.adjoin(tp(tw, {2, -2, 1}));
    Embedding em(tw);
    CHECK(em.sign_re(g) == 1);
    CHECK(em.sign_im(g) == -1); // minimal root is 1 - i
    TF other = TF(2) - g;       // the conjugate root 1 + i
    CHECK(em.compare(g, other) == -1);
    CHECK(em.compare(other, g) == 1);
    CHECK(em.compare(g, g) == 0);
    CHECK(em.sign_re(g - other) == 0);
}

TEST_CASE("argument comparison") {
    Tower tw;
    Embedding em(tw);
    TF one = tw.from_scalar(Scalar(1));
    TF i = tw.from_scalar(Scalar::i());
    TF onei = tw.from_scalar(Scalar(Rat(1), Rat(1)));   // arg pi/4
    TF m1 = tw.from_scalar(Scalar(-1));                 // arg pi
    TF mi = tw.from_scalar(Scalar(Rat(0), Rat(-1)));    // arg 3pi/2
    CHECK(em.compare_arg(one, onei) == -1);
    CHECK(em.compare_arg(onei, i) == -1);
    CHECK(em.compare_arg(i, m1) == -1);
    CHECK(em.compare_arg(m1, mi) == -1);
    CHECK(em.compare_arg(onei, tw.from_scalar(Scalar(Rat(2), Rat(2)))) == 0);
    CHECK(em.compare_arg(mi, i) == 1);
}

TEST_CASE("argument comparison with algebraic values") {
    Tower tw;
    TF r2 = tw.adjoin(tp(tw, {-2, 0, 1}));
    Embedding em(tw);
    TF sqrt2 = -r2; // positive
    TF i = tw.from_scalar(Scalar::i());
    // sqrt2 * (1 + i) has arg pi/4, same as 1 + i
    TF onei = tw.from_scalar(Scalar(Rat(1), Rat(1)));
    CHECK(em.compare_arg(sqrt2 * onei, onei) == 0);
    CHECK(em.compare_arg(sqrt2, sqrt2 * onei) == -1);
    CHECK(em.compare_arg(sqrt2 * onei, i) == -1);
}

TEST_CASE("annihilator vanishes at the value") {
    Tower tw;
    TF r2 = tw.adjoin(tp(tw, {-2, 0, 1}));
    Embedding em(tw);
    QPoly ann = em.annihilator(r2 + TF(1));
    CHECK(ann.degree() >= 2);
    auto v = em.approx(r2 + TF(1));
    double x = v.real();
    double acc = 0, p = 1;
    for (int j = 0; j <= ann.degree(); ++j) {
        acc += ann.c[j].convert_to<double>() * p;
        p *= x;
    }
    CHECK(std::abs(acc) < 1e-9);
}

TEST_CASE("embedding of roots of unity is consistent") {
    Tower tw;
    TF w = tw.root_of_unity(3);
    Embedding em(tw);
    auto v = em.approx(w);
    CHECK(std::abs(v.real() + 0.5) < 1e-12);
    CHECK(std::abs(std::abs(v.imag()) - std::sqrt(3.0) / 2) < 1e-12);
    // w + conj-partner: w + w^2 = -1 exactly
    CHECK(em.compare(w * w + w, TF(-1)) == 0);
}
