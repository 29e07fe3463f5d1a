#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/deform.hpp"

#include <cmath>

using namespace germ;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

Cx cx(const Scalar& s) {
    return {s.re.convert_to<double>(), s.im.convert_to<double>()};
}

Cx eval_poly(const BiPoly& f, Cx x, Cx y) {
    Cx acc(0);
    for (auto& [k, v] : f.terms())
        acc += cx(v) * std::pow(x, double(k.first)) * std::pow(y, double(k.second));
    return acc;
}

VerificationConfig small_cfg() {
    VerificationConfig cfg;
    cfg.samples = 60;
    cfg.covering_points = 3000;
    cfg.flow_seeds = 5;
    return cfg;
}

} // namespace

TEST_CASE("deformation space of a cusp with a smooth branch") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    DeformationSpace D = deformation_space(A);
    REQUIRE(D.lambda.size() == 2);
    int cusp = A.branches[0].ram == 2 ? 0 : 1;
    int line = 1 - cusp;
    CHECK(D.lambda_p[cusp] == std::vector<Rat>{Rat(3) / 2});
    CHECK(D.lambda_free[cusp] == std::vector<Rat>{Rat(1)});
    CHECK(D.lambda[cusp] == std::vector<Rat>({Rat(1), Rat(3) / 2}));
    CHECK(D.lambda[line] == std::vector<Rat>{Rat(1)});
    CHECK(D.threshold[cusp][line] == 1);
    // alpha = 1 sits at the contact threshold: coefficients must differ
    REQUIRE(D.constraints.size() == 1);
    CHECK(D.constraints[0].alpha == 1);
    CHECK_FALSE(D.constraints[0].equal);
}

TEST_CASE("check_param enforces the three conditions") {
    GermAnalysis A = analyze_germ(X.pow(2) - Y.pow(3));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    CHECK(check_param(nf.space, p));
    ParamPoint bad = p;
    bad.a[0][Rat(3) / 2] = Cx(0); // condition (1)
    CHECK_FALSE(check_param(nf.space, bad));
    bad = p;
    bad.u0 = Cx(0);
    CHECK_FALSE(check_param(nf.space, bad));

    GermAnalysis Axy = analyze_germ(X * Y);
    NormalFamily nxy = normal_family(Axy);
    ParamPoint q = distinguished_point(nxy);
    CHECK(check_param(nxy.space, q));
    q.a[1][Rat(1)] = q.a[0][Rat(1)]; // condition (3) at the threshold
    CHECK_FALSE(check_param(nxy.space, q));
}

TEST_CASE("distinguished point reproduces the germ") {
    // unit exactly 1 + y, roots exact: reconstruction holds to rounding error
    BiPoly f = (BiPoly::constant(Scalar(1)) + Y) * (X.pow(2) - Y.pow(3));
    GermAnalysis A = analyze_germ(f);
    NormalFamily nf = normal_family(A);
    CHECK(nf.n == 2);
    CHECK(std::abs(nf.u00_f - Cx(1)) < 1e-12);
    ParamPoint p = distinguished_point(nf);
    for (double r : {1e-1, 1e-2, 1e-3}) {
        Cx y(r, 0.4 * r), x(0.3 * r, -r);
        FamilyValue v = eval_family(nf, p, x, y);
        Cx direct = eval_poly(A.transverse, x, y);
        CHECK(std::abs(v.F - direct) <= 1e-10 * std::abs(direct));
    }
}

TEST_CASE("truncated reconstruction converges with the radius") {
    GermAnalysis A = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    double prev = 1.0;
    for (double r : {1e-2, 1e-3, 1e-4}) {
        Cx y(r, 0.2 * r), x(0.5 * std::pow(r, 1.5), 0);
        FamilyValue v = eval_family(nf, p, x, y);
        Cx direct = eval_poly(A.transverse, x, y);
        double rel = std::abs(v.F - direct) / std::abs(direct);
        CHECK(rel < 0.05 * prev); // truncation error drops superlinearly
        prev = rel;
    }
}

TEST_CASE("family roots solve the family") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    Cx t(0.05, 0.02);
    for (int m = 0; m < (int)nf.root_branch.size(); ++m) {
        Cx x = family_root(nf, p, m, t);
        FamilyValue v = eval_family_t(nf, p, x, t);
        CHECK(std::abs(v.F) < 1e-12);
    }
}

TEST_CASE("gradients match finite differences") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    Cx x(0.031, -0.017), t(0.21, 0.13);
    double h = 1e-7;
    FamilyValue v = eval_family_t(nf, p, x, t);

    auto fd = [&](auto&& set) {
        ParamPoint pp = p;
        set(pp, Cx(h, 0));
        Cx up = eval_family_t(nf, pp, x, t).F;
        pp = p;
        set(pp, Cx(-h, 0));
        return (up - eval_family_t(nf, pp, x, t).F) / (2 * h);
    };
    Cx dxn = (eval_family_t(nf, p, x + h, t).F - eval_family_t(nf, p, x - h, t).F) /
             (2 * h);
    CHECK(std::abs(v.dx - dxn) <= 1e-5 * (1 + std::abs(v.dx)));
    Cx y = t * t;
    Cx dyn = (eval_family(nf, p, x, y + h).F - eval_family(nf, p, x, y - h).F) /
             (2 * h);
    CHECK(std::abs(v.dy - dyn) <= 1e-4 * (1 + std::abs(v.dy)));

    Cx g = fd([](ParamPoint& q, Cx d) { q.tau1 += d; });
    CHECK(std::abs(v.dv.at("tau1") - g) <= 1e-5 * (1 + std::abs(g)));
    g = fd([](ParamPoint& q, Cx d) { q.u0 += d; });
    CHECK(std::abs(v.dv.at("u0") - g) <= 1e-5 * (1 + std::abs(g)));
    g = fd([](ParamPoint& q, Cx d) { q.sf += d; });
    CHECK(std::abs(v.dv.at("sf") - g) <= 1e-5 * (1 + std::abs(g)));
    for (size_t k = 0; k < nf.space.lambda.size(); ++k)
        for (const Rat& al : nf.space.lambda[k]) {
            g = fd([&](ParamPoint& q, Cx d) { q.a[k][al] += d; });
            std::string key = "a:" + std::to_string(k) + ":" + rat_str(al);
            CHECK(std::abs(v.dv.at(key) - g) <= 1e-5 * (1 + std::abs(g)));
        }
}

TEST_CASE("w ratios stay bounded for the cusp") {
    GermAnalysis A = analyze_germ(X.pow(2) - Y.pow(3));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    RatioReport rep = verify_w(nf, p, small_cfg());
    CHECK(rep.bounded);
    // and the report is deterministic
    RatioReport rep2 = verify_w(nf, p, small_cfg());
    CHECK(rep.maxima == rep2.maxima);
}

TEST_CASE("w_f holds on the horn cover of a two-branch germ") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    HornReport rep = verify_wf_on_horns(nf, p, small_cfg());
    CHECK(rep.bounded);
    CHECK(rep.covering_ok);
    CHECK(rep.covering_checked == small_cfg().covering_points);
    for (auto& reg : rep.regions) CHECK(reg.samples > 0);
}

TEST_CASE("kuo field vanishes on P and preserves levels") {
    GermAnalysis A = analyze_germ((X.pow(2) - Y.pow(3)) * (X - Y));
    NormalFamily nf = normal_family(A);
    ParamPoint p = distinguished_point(nf);
    ParamPoint dir;
    dir.u0 = Cx(0); // directions carry no implicit u0 component
    dir.a = p.a;
    for (auto& m : dir.a)
        for (auto& [al, v] : m) v = Cx(0);
    dir.sf = Cx(-1);
    dir.a[0].begin()->second = Cx(0.3, 0.1);

    auto [zx, zy] = kuo_field(nf, p, dir, Cx(0.1), Cx(0.2), Stratum::P);
    CHECK(zx == Cx(0));
    CHECK(zy == Cx(0));

    Cx x(0.07, 0.01), y(0.04, -0.02);
    auto [vx, vy] = kuo_field(nf, p, dir, x, y, Stratum::U);
    FamilyValue v = eval_family(nf, p, x, y);
    Cx dFds = v.dv.at("sf") * dir.sf;
    for (size_t k = 0; k < dir.a.size(); ++k)
        for (auto& [al, c] : dir.a[k])
            dFds += v.dv.at("a:" + std::to_string(k) + ":" + rat_str(al)) * c;
    Cx total = dFds + v.dx * vx + v.dy * vy;
    CHECK(std::abs(total) < 1e-10 * (1 + std::abs(dFds)));
}

TEST_CASE("joint family and straight path for a trivial deformation") {
    GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
    GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
    NormalFamily nf = joint_family(Af, Ag);
    CHECK(nf.joint);
    CHECK(nf.n == 2);
    CHECK(nf.root_branch.size() == 2);
    CHECK(std::abs(nf.u00_f - Cx(1)) < 1e-12);
    CHECK(std::abs(nf.u00_g - Cx(1)) < 1e-12);
    // g's tail carries the 5/2 and 7/2 correction terms; flat root 1 is the
    // canonical first root, flat root 0 its conjugate with flipped odd phases
    REQUIRE(nf.tail_g[1].size() >= 2);
    CHECK(nf.tail_g[1][0].e == 5);
    CHECK(std::abs(std::abs(nf.tail_g[1][0].c) - 0.5) < 1e-12);
    CHECK(std::abs(nf.tail_g[0][0].c + nf.tail_g[1][0].c) < 1e-12);
    CHECK(nf.tail_f[0].empty());

    ParamPoint pg = distinguished_point(nf, 1);
    Cx t(0.04, 0.01);
    Cx x = family_root(nf, pg, 0, t);
    Cx direct = eval_poly(Ag.transverse, x, t * t);
    CHECK(std::abs(direct) < 1e-9);

    std::vector<ParamPoint> path = joint_path(nf, small_cfg());
    CHECK(path.size() == 2);
}

TEST_CASE("joint_family rejects inequivalent germs") {
    GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
    GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(5));
    CHECK_THROWS_WITH_AS(joint_family(Af, Ag), doctest::Contains("differ"), GermError);
}

TEST_CASE("path insertion respects the constraints") {
    // two transverse smooth branches force a_1 coefficients apart; deforming
    // x*y to (x-y)(x-2y) must route around the a_1 collisions
    GermAnalysis Af = analyze_germ_factored({{X - Y, 1}, {X - Y.scaled(Scalar(2)), 1}});
    GermAnalysis Ag = analyze_germ_factored({{X - Y.scaled(Scalar(3)), 1}, {X + Y, 1}});
    NormalFamily nf = joint_family(Af, Ag);
    std::vector<ParamPoint> path = joint_path(nf, small_cfg());
    CHECK(path.size() >= 2);
    for (size_t i = 0; i + 1 < path.size(); ++i)
        for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            ParamPoint p = path[i];
            const ParamPoint& b = path[i + 1];
            p.tau1 += s * (b.tau1 - p.tau1);
            p.tau2 += s * (b.tau2 - p.tau2);
            p.sf += s * (b.sf - p.sf);
            p.sg += s * (b.sg - p.sg);
            p.u0 += s * (b.u0 - p.u0);
            for (size_t k = 0; k < p.a.size(); ++k)
                for (auto& [al, v] : p.a[k]) v += s * (b.a[k].at(al) - v);
            CHECK(check_param(nf.space, p));
        }
}

TEST_CASE("flow transports roots and preserves levels") {
    GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
    GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
    NormalFamily nf = joint_family(Af, Ag);
    VerificationConfig cfg = small_cfg();
    std::vector<ParamPoint> path = joint_path(nf, cfg);
    FlowReport rep = flow_trivialize(nf, path, cfg);
    CHECK(rep.ok);
    CHECK(rep.max_distance <= 1e-6);
    CHECK(rep.max_drift <= 1e-6);
    CHECK((int)rep.seeds.size() == 2 * cfg.flow_seeds);
}
