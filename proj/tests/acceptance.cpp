#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "germ/deform.hpp"
#include "germ/report.hpp"
#include "germ/tree.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

using namespace germ;

namespace {

const BiPoly X = BiPoly::x();
const BiPoly Y = BiPoly::y();

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

void verdict(int n, const char* what, bool ok) {
    std::printf("ACCEPTANCE %d [%s]: %s\n", n, what, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    CHECK(ok);
}

struct CorpusEntry {
    std::string name;
    std::vector<std::pair<BiPoly, int>> factors;
};

BiPoly line(long a) { return X - Y.scaled(Scalar(a)); }

std::vector<CorpusEntry> make_corpus() {
    std::vector<CorpusEntry> c;
    for (int n = 1; n <= 10; ++n)
        c.push_back({"A" + std::to_string(n), {{X.pow(2) - Y.pow(n + 1), 1}}});
    for (int n = 4; n <= 10; ++n)
        c.push_back({"D" + std::to_string(n), {{X, 1}, {X.pow(2) - Y.pow(n - 2), 1}}});
    c.push_back({"E6", {{X.pow(3) - Y.pow(4), 1}}});
    c.push_back({"E8", {{X.pow(3) - Y.pow(5), 1}}});

    // random 2-3 branch products from a fixed factor pool, deterministic
    auto pool_factor = [&](int tmpl, long a) -> BiPoly {
        switch (tmpl) {
        case 0: return line(a);
        case 1: return X.pow(2) - Y.pow(3).scaled(Scalar(a));
        case 2: return X.pow(2) - Y.pow(5).scaled(Scalar(a));
        case 3: return X.pow(3) - Y.pow(4).scaled(Scalar(a));
        default: return X.pow(2) - Y.pow(3).scaled(Scalar(a)) - Y.pow(4);
        }
    };
    std::mt19937_64 rng(2024);
    const long coeffs[] = {1, 2, 3, 5, -1, -2};
    int made = 0;
    while (made < 12) {
        int r = 2 + (int)(rng() % 2);
        std::vector<std::pair<int, long>> picks;
        bool dup = false;
        for (int i = 0; i < r; ++i) {
            std::pair<int, long> p{(int)(rng() % 5), coeffs[rng() % 6]};
            for (auto& q : picks)
                if (q == p) dup = true;
            picks.push_back(p);
        }
        if (dup) continue;
        CorpusEntry e;
        e.name = "R" + std::to_string(made);
        for (auto& [t, a] : picks) e.factors.push_back({pool_factor(t, a), 1});
        c.push_back(std::move(e));
        ++made;
    }
    return c;
}

struct Analyzed {
    GermAnalysis A;
    std::string enc;
};

const std::vector<CorpusEntry>& corpus() {
    static std::vector<CorpusEntry> c = make_corpus();
    return c;
}

const std::vector<Analyzed>& analyzed() {
    static std::vector<Analyzed> out = [] {
        std::vector<Analyzed> v;
        for (auto& e : corpus()) {
            Analyzed a{analyze_germ_factored(e.factors), ""};
            a.enc = canonical_encoding(build_tree(a.A));
            v.push_back(std::move(a));
        }
        return v;
    }();
    return out;
}

BiPoly product_of(const CorpusEntry& e) {
    BiPoly p = BiPoly::constant(Scalar(1));
    for (auto& [f, m] : e.factors) p = p * f.pow((unsigned)m);
    return p;
}

// sum of pairwise branch intersections of two coprime factors, computed from
// expansions in one shared tower
long contact_sum(const BiPoly& fa, const BiPoly& fb) {
    auto [g, c] = ensure_transverse(fa * fb);
    Rat trunc = sufficient_truncation(g);
    Tower tw;
    auto ba = puiseux_expand(fa.shear(c), trunc, tw);
    auto bb = puiseux_expand(fb.shear(c), trunc, tw);
    long total = 0;
    for (auto& A : ba)
        for (auto& B : bb) total += intersection_multiplicity(A, B, tw);
    return total;
}

long res_order(const BiPoly& fa, const BiPoly& fb) {
    auto o = order_at_zero(resultant_x(fa, fb));
    REQUIRE(o.has_value());
    return *o;
}

} // namespace

TEST_CASE("criterion 1: equivalence verdicts") {
    struct Case {
        BiPoly f, g;
        bool want;
    };
    std::vector<Case> cases = {
        {X.pow(2) - Y.pow(3), X.pow(2) - Y.pow(3) - Y.pow(4), true},
        {X.pow(2) - Y.pow(3), Y.pow(2) - X.pow(3), true},
        {X * Y, X.pow(2) - Y.pow(2), true},
        {X.pow(2) - Y.pow(3), X.pow(2) - Y.pow(5), false},
        {X.pow(2) * (X - Y), X * (X - Y) * (X - Y.scaled(Scalar(2))), false},
    };
    bool ok = true;
    for (auto& c : cases) {
        auto t0 = std::chrono::steady_clock::now();
        bool got = equivalent(c.f, c.g);
        double dt = seconds_since(t0);
        if (got != c.want || dt >= 5.0) ok = false;
    }
    verdict(1, "equivalence verdicts < 5s each", ok);
}

TEST_CASE("criterion 2: tree encoding agrees with the bijection matcher") {
    auto t0 = std::chrono::steady_clock::now();
    auto& as = analyzed();
    bool ok = as.size() >= 30;
    long pairs = 0;
    for (size_t i = 0; i < as.size(); ++i)
        for (size_t j = i + 1; j < as.size(); ++j) {
            ++pairs;
            bool enc_eq = as[i].enc == as[j].enc;
            if (enc_eq != equivalent_matcher(as[i].A.invariant, as[j].A.invariant))
                ok = false;
        }
    double dt = seconds_since(t0);
    if (pairs < 400 || dt >= 60.0) ok = false;
    verdict(2, "matcher agreement on all corpus pairs < 60s", ok);
}

TEST_CASE("criterion 3: Milnor numbers via the resultant oracle") {
    bool ok = true;
    MilnorDelta md = milnor_delta_check(X.pow(2) - Y.pow(3));
    if (md.mu != 2 || !md.consistent) ok = false;
    md = milnor_delta_check(X.pow(3) - Y.pow(5));
    if (md.mu != 8 || !md.consistent) ok = false;
    md = milnor_delta_check((X.pow(2) - Y.pow(3)) * (X - Y));
    if (md.mu != 5 || !md.consistent) ok = false;
    for (auto& e : corpus()) {
        MilnorDelta m = milnor_delta_check(product_of(e));
        if (!m.consistent) ok = false;
    }
    verdict(3, "mu oracle and mu = 2 delta - r + 1 corpus-wide", ok);
}

TEST_CASE("criterion 4: contact sums equal resultant orders") {
    bool ok = true;
    for (auto& e : corpus())
        for (size_t a = 0; a < e.factors.size(); ++a)
            for (size_t b = a + 1; b < e.factors.size(); ++b) {
                const BiPoly& fa = e.factors[a].first;
                const BiPoly& fb = e.factors[b].first;
                if (contact_sum(fa, fb) != res_order(fa, fb)) ok = false;
            }
    BiPoly cusp = X.pow(2) - Y.pow(3);
    BiPoly other = X.pow(3) - Y.pow(2);
    if (res_order(cusp, other) != 4) ok = false;
    if (contact_sum(cusp, other) != 4) ok = false;
    verdict(4, "cross-factor intersections match resultants", ok);
}

TEST_CASE("criterion 5: max-contact property") {
    bool ok = true;
    for (auto& a : analyzed()) {
        const GermAnalysis& A = a.A;
        for (size_t i = 0; i < A.branches.size(); ++i)
            for (size_t j = i + 1; j < A.branches.size(); ++j) {
                Rat mx(-1);
                for (auto& r1 : A.conjugates[i])
                    for (auto& r2 : A.conjugates[j])
                        mx = std::max(mx, contact_order(r1, r2));
                if (A.invariant.contact[i][j] != mx) ok = false;
            }
    }
    verdict(5, "canonical-first-root contact is the maximum", ok);
}

TEST_CASE("criterion 6: w and w_f verdicts with full covering") {
    auto t0 = std::chrono::steady_clock::now();
    VerificationConfig cfg; // defaults: 200 samples, 1e5 covering points
    bool ok = true;

    GermAnalysis Ac = analyze_germ(X.pow(2) - Y.pow(3));
    NormalFamily nfc = normal_family(Ac);
    ParamPoint pc = distinguished_point(nfc);
    RatioReport wc = verify_w(nfc, pc, cfg);
    HornReport hc = verify_wf_on_horns(nfc, pc, cfg);
    if (!wc.bounded || !hc.bounded || !hc.covering_ok) ok = false;

    GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
    GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
    NormalFamily nfj = joint_family(Ag, Af); // deform x^2-y^3-y^4 -> x^2-y^3
    ParamPoint pj = distinguished_point(nfj);
    RatioReport wj = verify_w(nfj, pj, cfg);
    HornReport hj = verify_wf_on_horns(nfj, pj, cfg);
    if (!wj.bounded || !hj.bounded || !hj.covering_ok) ok = false;
    if (hc.covering_checked != cfg.covering_points ||
        hj.covering_checked != cfg.covering_points)
        ok = false;

    if (seconds_since(t0) >= 120.0) ok = false;
    verdict(6, "w / w_f growth and 1e5-point covering < 120s", ok);
}

TEST_CASE("criterion 7: trivialization along the joint path") {
    GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
    GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
    NormalFamily nf = joint_family(Ag, Af);
    VerificationConfig cfg; // 50 + 50 seeds by default
    std::vector<ParamPoint> path = joint_path(nf, cfg);
    FlowReport rep = flow_trivialize(nf, path, cfg);
    bool ok = rep.ok && rep.max_distance <= 1e-6 && rep.max_drift <= 1e-6 &&
              (int)rep.seeds.size() == 2 * cfg.flow_seeds;
    verdict(7, "50+50 seeds transported within 1e-6", ok);
}

TEST_CASE("criterion 8: input scrambling invariance") {
    std::mt19937_64 rng(7);
    const Scalar units[] = {Scalar(2), Scalar(-1), Scalar::i(),
                            Scalar(Rat(3), Rat(1)), Scalar(Rat(1), Rat(2))};
    const Scalar shears[] = {Scalar(0), Scalar(1), Scalar(-1), Scalar::i(),
                             Scalar(2)};
    bool ok = true;
    for (size_t gi = 0; gi < corpus().size(); ++gi) {
        const CorpusEntry& e = corpus()[gi];
        const std::string& want = analyzed()[gi].enc;
        for (int s = 0; s < 10; ++s) {
            std::vector<std::pair<BiPoly, int>> fs = e.factors;
            std::shuffle(fs.begin(), fs.end(), rng);
            size_t fi = rng() % fs.size();
            fs[fi].first = fs[fi].first.scaled(units[rng() % 5]);
            Scalar c = shears[rng() % 5];
            for (auto& [f, m] : fs) f = f.shear(c);
            std::string got =
                canonical_encoding(build_tree(analyze_germ_factored(fs)));
            if (got != want) ok = false;
        }
    }
    verdict(8, "10 scramblings per germ, byte-identical encodings", ok);
}

TEST_CASE("criterion 9: byte-identical reports") {
    bool ok = true;
    auto analyze_dump = [] {
        GermAnalysis A = analyze_germ_factored({{(X.pow(2) - Y.pow(3)), 1},
                                                {X - Y, 1}});
        return dump_report(analyze_report(A, build_tree(A),
                                          milnor_delta_check(A.input)));
    };
    if (analyze_dump() != analyze_dump()) ok = false;

    auto deform_dump = [] {
        GermAnalysis Af = analyze_germ(X.pow(2) - Y.pow(3));
        GermAnalysis Ag = analyze_germ(X.pow(2) - Y.pow(3) - Y.pow(4));
        NormalFamily nf = joint_family(Af, Ag);
        VerificationConfig cfg;
        cfg.samples = 40;
        cfg.covering_points = 2000;
        cfg.flow_seeds = 4;
        cfg.seed = 11;
        std::vector<ParamPoint> path = joint_path(nf, cfg);
        return dump_report(deform_report(nf, path.size(),
                                         verify_w(nf, path.front(), cfg),
                                         verify_wf_on_horns(nf, path.front(), cfg),
                                         flow_trivialize(nf, path, cfg)));
    };
    if (deform_dump() != deform_dump()) ok = false;
    verdict(9, "reruns produce byte-identical JSON", ok);
}
