#include "germ/deform.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace germ {

namespace {

using TS = std::vector<Cx>;  // truncated t-series, index = exponent
using XP = std::vector<TS>;  // polynomial in x with t-series coefficients

// std::pow(complex, double) NaNs at base 0; roots sit exactly on it
Cx ipow(Cx b, long e) {
    Cx r(1);
    for (; e > 0; e >>= 1, b *= b)
        if (e & 1) r *= b;
    return r;
}

Cx cx_of(const Scalar& s) {
    return {s.re.convert_to<double>(), s.im.convert_to<double>()};
}

TS ts_mul(const TS& a, const TS& b, long tmax) {
    TS r(std::min<long>(tmax + 1, (long)a.size() + (long)b.size() - 1), Cx(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Cx(0)) continue;
        for (size_t j = 0; j < b.size() && i + j < r.size(); ++j)
            r[i + j] += a[i] * b[j];
    }
    return r;
}

void ts_sub_scaled(TS& r, const TS& a, const TS& b, long tmax) {
    // r -= a * b, truncated
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Cx(0)) continue;
        for (size_t j = 0; j < b.size() && (long)(i + j) <= tmax; ++j) {
            if (r.size() <= i + j) r.resize(i + j + 1, Cx(0));
            r[i + j] -= a[i] * b[j];
        }
    }
}

Cx ts_eval(const TS& s, Cx t) {
    Cx acc(0);
    for (size_t i = s.size(); i-- > 0;) acc = acc * t + s[i];
    return acc;
}

Cx ts_eval_dt(const TS& s, Cx t) {
    Cx acc(0);
    for (size_t i = s.size(); i-- > 1;) acc = acc * t + double(i) * s[i];
    return acc;
}

Cx xp_eval(const XP& p, Cx x, Cx t) {
    Cx acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + ts_eval(p[i], t);
    return acc;
}

Cx xp_eval_dx(const XP& p, Cx x, Cx t) {
    Cx acc(0);
    for (size_t i = p.size(); i-- > 1;) acc = acc * x + double(i) * ts_eval(p[i], t);
    return acc;
}

Cx xp_eval_dt(const XP& p, Cx x, Cx t) {
    Cx acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + ts_eval_dt(p[i], t);
    return acc;
}

Cx unit_phase(long num, long den) {
    double a = 2.0 * std::numbers::pi * double(num % den) / double(den);
    return {std::cos(a), std::sin(a)};
}

std::string dir_key(int k, const Rat& alpha) {
    return "a:" + std::to_string(k) + ":" + rat_str(alpha);
}

// x-polynomial with t-series coefficients for the sheared germ, y = t^n
XP germ_as_xp(const BiPoly& f, long n, long tmax) {
    XP p(f.deg_x() + 1);
    for (auto& [k, v] : f.terms()) {
        long e = n * k.second;
        if (e > tmax) continue;
        TS& c = p[k.first];
        if ((long)c.size() <= e) c.resize(e + 1, Cx(0));
        c[e] = cx_of(v);
    }
    for (auto& c : p)
        if (c.empty()) c.assign(1, Cx(0));
    return p;
}

// truncated series of flat root m at the distinguished coefficients
TS root_series(const std::vector<PuiseuxRoot>& conj, int j, long n, long tmax,
               Embedding& em) {
    TS s(1, Cx(0));
    for (auto& t : conj[j].terms) {
        Rat en = t.alpha * n;
        if (rat_den(en) != 1) fail("deform.internal", "non-integral t-exponent");
        long e = rat_num(en).convert_to<long>();
        if (e > tmax) continue;
        if ((long)s.size() <= e) s.resize(e + 1, Cx(0));
        s[e] = em.approx(t.coeff);
    }
    return s;
}

// quotient of f by the monic product of the root factors; the quotient is the
// unit part of the Weierstrass-type factorization
XP unit_quotient(const GermAnalysis& A, long n, long tmax) {
    XP f = germ_as_xp(A.transverse, n, tmax);
    XP W(1, TS{Cx(1)});
    for (size_t k = 0; k < A.branches.size(); ++k)
        for (int j = 0; j < A.branches[k].ram; ++j) {
            TS lam = root_series(A.conjugates[k], j, n, tmax, *A.embedding);
            for (auto& c : lam) c = -c;
            XP lin{lam, TS{Cx(1)}};
            for (int rep = 0; rep < A.branches[k].mult; ++rep) {
                XP r(W.size() + 1, TS{Cx(0)});
                for (size_t i = 0; i < W.size(); ++i) {
                    TS t0 = ts_mul(W[i], lin[0], tmax);
                    if (r[i].size() < t0.size()) r[i].resize(t0.size(), Cx(0));
                    for (size_t q = 0; q < t0.size(); ++q) r[i][q] += t0[q];
                    if (r[i + 1].size() < W[i].size()) r[i + 1].resize(W[i].size(), Cx(0));
                    for (size_t q = 0; q < W[i].size(); ++q) r[i + 1][q] += W[i][q];
                }
                W = std::move(r);
            }
        }
    long D = (long)W.size() - 1;
    if ((long)f.size() - 1 < D) fail("deform.internal", "x-degree below root count");
    XP q(f.size() - W.size() + 1, TS{Cx(0)});
    XP r = f;
    for (long i = (long)r.size() - 1; i >= D; --i) {
        TS c = r[i];
        TS& qi = q[i - D];
        if (qi.size() < c.size()) qi.resize(c.size(), Cx(0));
        for (size_t m = 0; m < c.size(); ++m) qi[m] += c[m];
        for (long l = 0; l <= D; ++l) ts_sub_scaled(r[i - D + l], c, W[l], tmax);
        r[i].assign(1, Cx(0));
    }
    return q;
}

struct RootEval {
    Cx lam, dlam_dt;
    Cx tail_f, tail_g; // tail values (the s-derivatives of the root)
};

RootEval eval_root(const NormalFamily& nf, const ParamPoint& p, int m, Cx t) {
    RootEval r{Cx(0), Cx(0), Cx(0), Cx(0)};
    int k = nf.root_branch[m];
    for (auto& mt : nf.main_terms[m]) {
        auto it = p.a[k].find(mt.alpha);
        Cx a = it == p.a[k].end() ? Cx(0) : it->second;
        Cx pw = ipow(t, mt.e - 1);
        r.lam += a * mt.phase * pw * t;
        r.dlam_dt += a * mt.phase * double(mt.e) * pw;
    }
    for (auto& tt : nf.tail_f[m]) {
        Cx pw = ipow(t, tt.e - 1);
        r.tail_f += tt.c * pw * t;
        r.lam += p.sf * tt.c * pw * t;
        r.dlam_dt += p.sf * tt.c * double(tt.e) * pw;
    }
    if (nf.joint)
        for (auto& tt : nf.tail_g[m]) {
            Cx pw = ipow(t, tt.e - 1);
            r.tail_g += tt.c * pw * t;
            r.lam += p.sg * tt.c * pw * t;
            r.dlam_dt += p.sg * tt.c * double(tt.e) * pw;
        }
    return r;
}

} // namespace

DeformationSpace deformation_space(const GermAnalysis& A) {
    DeformationSpace D;
    int r = (int)A.branches.size();
    for (auto& b : A.branches) {
        D.lambda_p.push_back(b.lambda_p);
        D.lambda_free.push_back(b.lambda_free);
        std::vector<Rat> l = b.lambda_p;
        l.insert(l.end(), b.lambda_free.begin(), b.lambda_free.end());
        std::sort(l.begin(), l.end());
        D.lambda.push_back(std::move(l));
    }
    D.threshold = A.invariant.contact;
    for (int k1 = 0; k1 < r; ++k1)
        for (int k2 = k1 + 1; k2 < r; ++k2) {
            Rat O = D.threshold[k1][k2];
            for (const Rat& a : D.lambda[k1]) {
                if (!std::binary_search(D.lambda[k2].begin(), D.lambda[k2].end(), a))
                    continue;
                if (a < O) D.constraints.push_back({k1, k2, a, true});
                else if (a == O) D.constraints.push_back({k1, k2, a, false});
            }
        }
    return D;
}

bool check_param(const DeformationSpace& D, const ParamPoint& p) {
    if (p.u0 == Cx(0)) return false;
    if (p.a.size() != D.lambda.size()) return false;
    for (size_t k = 0; k < D.lambda_p.size(); ++k)
        for (const Rat& a : D.lambda_p[k]) {
            auto it = p.a[k].find(a);
            if (it == p.a[k].end() || it->second == Cx(0)) return false;
        }
    for (auto& c : D.constraints) {
        auto i1 = p.a[c.k1].find(c.alpha);
        auto i2 = p.a[c.k2].find(c.alpha);
        Cx v1 = i1 == p.a[c.k1].end() ? Cx(0) : i1->second;
        Cx v2 = i2 == p.a[c.k2].end() ? Cx(0) : i2->second;
        if (c.equal ? (v1 != v2) : (v1 == v2)) return false;
    }
    return true;
}

NormalFamily normal_family(const GermAnalysis& A) {
    NormalFamily nf;
    long n = 1;
    for (auto& b : A.branches) n = std::lcm(n, (long)b.ram);
    nf.n = n;
    nf.tmax = rat_ceil(A.trunc * n).convert_to<long>();
    nf.space = deformation_space(A);
    Embedding& em = *A.embedding;

    for (size_t k = 0; k < A.branches.size(); ++k) {
        const Branch& b = A.branches[k];
        nf.D += (long)b.mult * b.ram;
        std::map<Rat, Cx> af;
        for (const Rat& alpha : nf.space.lambda[k])
            af[alpha] = em.approx(coeff_at(b.first, alpha));
        nf.a_f.push_back(std::move(af));
        for (int j = 1; j <= b.ram; ++j) {
            nf.root_branch.push_back((int)k);
            nf.d.push_back(b.mult);
            std::vector<NormalFamily::MainTerm> main;
            for (const Rat& alpha : nf.space.lambda[k]) {
                Rat am = alpha * b.ram;
                if (rat_den(am) != 1)
                    fail("deform.internal", "exponent outside the branch lattice");
                long num = rat_num(am).convert_to<long>();
                Rat en = alpha * n;
                main.push_back({alpha, rat_num(en).convert_to<long>(),
                                unit_phase(num * j, b.ram)});
            }
            nf.main_terms.push_back(std::move(main));
            std::vector<NormalFamily::TailTerm> tail;
            for (auto& t : A.conjugates[k][j - 1].terms) {
                if (std::binary_search(nf.space.lambda[k].begin(),
                                       nf.space.lambda[k].end(), t.alpha))
                    continue;
                Rat en = t.alpha * n;
                if (rat_den(en) != 1)
                    fail("deform.internal", "non-integral t-exponent");
                tail.push_back({rat_num(en).convert_to<long>(), em.approx(t.coeff)});
            }
            nf.tail_f.push_back(std::move(tail));
            nf.tail_g.emplace_back();
        }
    }

    int M = (int)nf.root_branch.size();
    nf.e.assign(M, std::vector<long>(M, 0));
    {
        std::vector<const PuiseuxRoot*> flat;
        for (size_t k = 0; k < A.conjugates.size(); ++k)
            for (auto& r : A.conjugates[k]) flat.push_back(&r);
        for (int i = 0; i < M; ++i)
            for (int j = i + 1; j < M; ++j) {
                Rat c = contact_order(*flat[i], *flat[j]) * n;
                nf.e[i][j] = nf.e[j][i] = rat_num(c).convert_to<long>();
            }
    }

    XP u = unit_quotient(A, n, nf.tmax);
    nf.u00_f = u[0].empty() ? Cx(0) : u[0][0];
    if (nf.u00_f == Cx(0)) fail("deform.internal", "vanishing unit constant");
    if (!u[0].empty()) u[0][0] = Cx(0);
    nf.u1_f = std::move(u);
    return nf;
}

NormalFamily joint_family(const GermAnalysis& Af, const GermAnalysis& Ag) {
    if (Af.branches.size() != Ag.branches.size())
        fail("deform.inequivalent", "branch counts differ");
    for (size_t k = 0; k < Af.branches.size(); ++k) {
        const Branch& bf = Af.branches[k];
        const Branch& bg = Ag.branches[k];
        if (bf.mult != bg.mult || bf.ram != bg.ram ||
            bf.char_exponents != bg.char_exponents ||
            bf.lambda_p != bg.lambda_p || bf.lambda_free != bg.lambda_free)
            fail("deform.inequivalent", "branch data differ under the canonical order");
    }
    if (Af.invariant.contact != Ag.invariant.contact)
        fail("deform.inequivalent", "contact matrices differ");

    NormalFamily nf = normal_family(Af);
    nf.joint = true;
    Embedding& em = *Ag.embedding;
    long n = nf.n;
    int m = 0;
    for (size_t k = 0; k < Ag.branches.size(); ++k) {
        std::map<Rat, Cx> ag;
        for (const Rat& alpha : nf.space.lambda[k])
            ag[alpha] = em.approx(coeff_at(Ag.branches[k].first, alpha));
        nf.a_g.push_back(std::move(ag));
        for (int j = 1; j <= Ag.branches[k].ram; ++j, ++m) {
            std::vector<NormalFamily::TailTerm> tail;
            for (auto& t : Ag.conjugates[k][j - 1].terms) {
                if (std::binary_search(nf.space.lambda[k].begin(),
                                       nf.space.lambda[k].end(), t.alpha))
                    continue;
                Rat en = t.alpha * n;
                if (rat_den(en) != 1)
                    fail("deform.internal", "non-integral t-exponent");
                tail.push_back({rat_num(en).convert_to<long>(), em.approx(t.coeff)});
            }
            nf.tail_g[m] = std::move(tail);
        }
    }
    long tg = rat_ceil(Ag.trunc * n).convert_to<long>();
    nf.tmax = std::min(nf.tmax, tg);
    XP u = unit_quotient(Ag, n, tg);
    nf.u00_g = u[0].empty() ? Cx(0) : u[0][0];
    if (nf.u00_g == Cx(0)) fail("deform.internal", "vanishing unit constant");
    if (!u[0].empty()) u[0][0] = Cx(0);
    nf.u1_g = std::move(u);
    return nf;
}

ParamPoint distinguished_point(const NormalFamily& nf, int which) {
    ParamPoint p;
    if (which == 0) {
        p.tau1 = 1.0;
        p.sf = 1.0;
        p.u0 = nf.u00_f;
        p.a = nf.a_f;
    } else {
        if (!nf.joint) fail("deform.internal", "g-point of a single family");
        p.tau2 = 1.0;
        p.sg = 1.0;
        p.u0 = nf.u00_g;
        p.a = nf.a_g;
    }
    return p;
}

Cx family_root(const NormalFamily& nf, const ParamPoint& p, int m, Cx t) {
    return eval_root(nf, p, m, t).lam;
}

FamilyValue eval_family_t(const NormalFamily& nf, const ParamPoint& p, Cx x, Cx t,
                          bool reduced) {
    int M = (int)nf.root_branch.size();
    std::vector<RootEval> roots(M);
    std::vector<Cx> diff(M);
    for (int m = 0; m < M; ++m) {
        roots[m] = eval_root(nf, p, m, t);
        diff[m] = x - roots[m].lam;
    }
    auto dm = [&](int m) { return reduced ? 1 : nf.d[m]; };

    // P and the per-root partial products d_m (x-lam_m)^(d_m-1) prod_rest
    Cx P(1);
    for (int m = 0; m < M; ++m)
        P *= ipow(diff[m], dm(m));
    std::vector<Cx> Pm(M);
    for (int m = 0; m < M; ++m) {
        Cx acc = double(dm(m)) * ipow(diff[m], dm(m) - 1);
        for (int l = 0; l < M; ++l)
            if (l != m) acc *= ipow(diff[l], dm(l));
        Pm[m] = acc;
    }

    Cx u1f = xp_eval(nf.u1_f, x, t);
    Cx u1g = nf.joint ? xp_eval(nf.u1_g, x, t) : Cx(0);
    Cx U = p.tau1 * u1f + p.tau2 * u1g + p.u0;
    Cx Ux = p.tau1 * xp_eval_dx(nf.u1_f, x, t) +
            (nf.joint ? p.tau2 * xp_eval_dx(nf.u1_g, x, t) : Cx(0));
    Cx Ut = p.tau1 * xp_eval_dt(nf.u1_f, x, t) +
            (nf.joint ? p.tau2 * xp_eval_dt(nf.u1_g, x, t) : Cx(0));

    FamilyValue v;
    v.F = U * P;
    Cx Px(0), Pt(0);
    for (int m = 0; m < M; ++m) {
        Px += Pm[m];
        Pt -= Pm[m] * roots[m].dlam_dt;
    }
    v.dx = Ux * P + U * Px;
    Cx Ft = Ut * P + U * Pt;
    Cx dydt = double(nf.n) * ipow(t, nf.n - 1);
    v.dy = Ft / dydt;

    v.dv["tau1"] = u1f * P;
    if (nf.joint) v.dv["tau2"] = u1g * P;
    v.dv["u0"] = P;
    Cx dsf(0), dsg(0);
    for (int m = 0; m < M; ++m) {
        dsf -= Pm[m] * roots[m].tail_f;
        if (nf.joint) dsg -= Pm[m] * roots[m].tail_g;
    }
    v.dv["sf"] = U * dsf;
    if (nf.joint) v.dv["sg"] = U * dsg;
    for (size_t k = 0; k < nf.space.lambda.size(); ++k)
        for (const Rat& alpha : nf.space.lambda[k]) v.dv[dir_key((int)k, alpha)] = Cx(0);
    for (int m = 0; m < M; ++m) {
        int k = nf.root_branch[m];
        for (auto& mt : nf.main_terms[m]) {
            Cx mono = mt.phase * ipow(t, mt.e);
            v.dv[dir_key(k, mt.alpha)] -= U * Pm[m] * mono;
        }
    }
    return v;
}

FamilyValue eval_family(const NormalFamily& nf, const ParamPoint& p, Cx x, Cx y,
                        bool reduced) {
    Cx t = std::pow(y, 1.0 / double(nf.n));
    return eval_family_t(nf, p, x, t, reduced);
}

// ---------------- verification ----------------

namespace {

std::vector<std::string> all_directions(const NormalFamily& nf) {
    std::vector<std::string> dirs = {"tau1", "u0", "sf"};
    if (nf.joint) {
        dirs.push_back("tau2");
        dirs.push_back("sg");
    }
    for (size_t k = 0; k < nf.space.lambda.size(); ++k)
        for (const Rat& alpha : nf.space.lambda[k]) dirs.push_back(dir_key((int)k, alpha));
    return dirs;
}

// least-squares growth rate of log(max) per annulus (annuli are decades of
// |y|); annuli with no admissible samples report 0 and are skipped.  The fit
// sees the radial trend through preasymptotic transients at the outer radii
// while still flagging any power-law divergence.
bool growth_ok(const std::vector<double>& maxima, double tol) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < maxima.size(); ++i)
        if (maxima[i] > 1e-300) pts.push_back({double(i), std::log(maxima[i])});
    if (pts.size() < 2) return true;
    double mx = 0, my = 0;
    for (auto& [x, y] : pts) mx += x, my += y;
    mx /= pts.size();
    my /= pts.size();
    double cov = 0, var = 0;
    for (auto& [x, y] : pts) {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    return cov / var <= std::log1p(tol);
}

double wf_ratio(const FamilyValue& v, const std::string& dir, Cx x, Cx y) {
    double num = std::abs(v.dv.at(dir));
    double den = std::hypot(std::abs(x), std::abs(y)) *
                 std::hypot(std::abs(v.dx), std::abs(v.dy));
    if (den == 0.0) return num == 0.0 ? 0.0 : 1e300;
    return num / den;
}

} // namespace

RatioReport verify_w(const NormalFamily& nf, const ParamPoint& p,
                     const VerificationConfig& cfg) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    RatioReport rep;
    rep.directions = all_directions(nf);
    rep.maxima.assign(rep.directions.size(),
                      std::vector<double>(cfg.radii.size(), 0.0));
    int M = (int)nf.root_branch.size();
    for (size_t ri = 0; ri < cfg.radii.size(); ++ri) {
        // identical draws on every annulus, so growth comparisons see the
        // radial trend rather than sampling noise
        std::mt19937_64 rng(cfg.seed);
        double rt = std::pow(cfg.radii[ri], 1.0 / double(nf.n));
        for (int s = 0; s < cfg.samples; ++s) {
            double ang = 2.0 * std::numbers::pi * uni(rng);
            Cx t = rt * Cx(std::cos(ang), std::sin(ang));
            int m = (int)(uni(rng) * M) % M;
            Cx x = family_root(nf, p, m, t);
            Cx y = ipow(t, nf.n);
            FamilyValue v = eval_family_t(nf, p, x, t, true);
            for (size_t di = 0; di < rep.directions.size(); ++di) {
                double r = wf_ratio(v, rep.directions[di], x, y);
                rep.maxima[di][ri] = std::max(rep.maxima[di][ri], r);
            }
        }
    }
    rep.bounded = true;
    for (auto& m : rep.maxima)
        if (!growth_ok(m, cfg.growth_tol)) rep.bounded = false;
    return rep;
}

namespace {

struct HornSpec {
    int m = 0;      // center root
    long d = 0;     // horn exponent (t-scale)
    bool inner = true; // inner-hat H-hat vs ring H-tilde
};

long horn_M(const NormalFamily& nf, int m, long d) {
    long M = 0;
    int n = (int)nf.root_branch.size();
    for (int l = 0; l < n; ++l) {
        if (l == m) {
            M += d * nf.d[l];
            continue;
        }
        if (nf.e[m][l] >= d) M += d * nf.d[l];
        else M += nf.d[l] * nf.e[m][l];
    }
    return M;
}

} // namespace

HornReport verify_wf_on_horns(const NormalFamily& nf, const ParamPoint& p,
                              const VerificationConfig& cfg) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    auto dirs = all_directions(nf);
    int M = (int)nf.root_branch.size();

    std::vector<HornSpec> specs;
    for (int m = 0; m < M; ++m) {
        std::vector<long> ds = {0};
        for (int l = 0; l < M; ++l)
            if (l != m) ds.push_back(nf.e[m][l]);
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        for (long d : ds) specs.push_back({m, d, true});
        for (long d : ds)
            if (d > 0) specs.push_back({m, d, false});
    }

    HornReport rep;
    for (size_t si = 0; si < specs.size(); ++si) {
        const HornSpec& sp = specs[si];
        HornReport::Region reg;
        {
            std::ostringstream os;
            os << (sp.inner ? "hat" : "ring") << ":m=" << sp.m << ":d=" << sp.d;
            reg.name = os.str();
        }
        reg.M = horn_M(nf, sp.m, sp.d);
        reg.maxima.assign(cfg.radii.size(), 0.0);
        reg.delta.assign(cfg.radii.size(), 0.0);
        for (size_t ri = 0; ri < cfg.radii.size(); ++ri) {
            // shared draws across annuli, as in verify_w
            std::mt19937_64 rng(cfg.seed + 1 + si);
            double rt = std::pow(cfg.radii[ri], 1.0 / double(nf.n));
            double dmax = 0.0;
            for (int s = 0; s < cfg.samples; ++s) {
                double ang = 2.0 * std::numbers::pi * uni(rng);
                Cx t = rt * Cx(std::cos(ang), std::sin(ang));
                double td = std::pow(rt, double(sp.d));
                Cx center = family_root(nf, p, sp.m, t);
                // admissible |x - center| band in the t^d scale
                double lo, hi;
                if (sp.inner) {
                    lo = 1e-14;
                    for (int l = 0; l < M; ++l)
                        if (l != sp.m && nf.e[sp.m][l] > sp.d)
                            lo = std::max(lo, cfg.C * std::pow(rt, double(nf.e[sp.m][l] - sp.d)));
                    lo *= 1.02;
                    hi = cfg.eps;
                } else {
                    lo = cfg.eps * 1.05;
                    hi = cfg.C;
                }
                if (lo >= hi) continue;
                Cx x;
                bool found = false;
                for (int tries = 0; tries < 50 && !found; ++tries) {
                    double mag = lo * std::pow(hi / lo, uni(rng));
                    double xa = 2.0 * std::numbers::pi * uni(rng);
                    Cx xt = mag * Cx(std::cos(xa), std::sin(xa));
                    x = center + xt * ipow(t, sp.d);
                    found = true;
                    if (!sp.inner) {
                        // outside the eps-horns of every nearby root
                        for (int l = 0; l < M && found; ++l) {
                            if (l != sp.m && nf.e[sp.m][l] < sp.d) continue;
                            Cx xl = l == sp.m ? center : family_root(nf, p, l, t);
                            if (std::abs(x - xl) <= cfg.eps * td) found = false;
                        }
                    } else {
                        for (int l = 0; l < M && found; ++l)
                            if (std::abs(x - family_root(nf, p, l, t)) < 1e-13 * td)
                                found = false;
                    }
                }
                if (!found) continue;
                ++reg.samples;
                Cx y = ipow(t, nf.n);
                FamilyValue v = eval_family_t(nf, p, x, t);
                if (std::abs(v.F) == 0.0) continue;
                for (auto& dname : dirs)
                    reg.maxima[ri] = std::max(reg.maxima[ri], wf_ratio(v, dname, x, y));
                // t * dF/dt = n y dF/dy
                Cx tFt = double(nf.n) * y * v.dy;
                double dd = double(reg.M) - std::abs(tFt / v.F);
                dmax = std::max(dmax, dd);
            }
            reg.delta[ri] = dmax;
        }
        reg.bounded = growth_ok(reg.maxima, cfg.growth_tol);
        rep.regions.push_back(std::move(reg));
    }
    rep.bounded = true;
    for (auto& r : rep.regions)
        if (!r.bounded) rep.bounded = false;

    // covering: random points of the punctured polydisc must hit some region
    std::mt19937_64 rng(cfg.seed + 999);
    rep.covering_ok = true;
    double rt_hi = std::pow(cfg.radii.front(), 1.0 / double(nf.n));
    double rt_lo = std::pow(cfg.radii.back(), 1.0 / double(nf.n));
    for (long i = 0; i < cfg.covering_points && rep.covering_ok; ++i) {
        double rt = rt_lo * std::pow(rt_hi / rt_lo, uni(rng));
        double ang = 2.0 * std::numbers::pi * uni(rng);
        Cx t = rt * Cx(std::cos(ang), std::sin(ang));
        Cx x;
        if (uni(rng) < 0.5) {
            double mag = 1e-10 * std::pow(cfg.eps * 0.5 / 1e-10, uni(rng));
            double xa = 2.0 * std::numbers::pi * uni(rng);
            x = mag * Cx(std::cos(xa), std::sin(xa));
        } else {
            int m = (int)(uni(rng) * M) % M;
            long dpick = nf.e[m][(int)(uni(rng) * M) % M];
            double scale = std::pow(rt, double(dpick)) * cfg.eps;
            double mag = scale * std::pow(1e6, uni(rng) - 0.5);
            mag = std::min(mag, cfg.eps * 0.5);
            double xa = 2.0 * std::numbers::pi * uni(rng);
            x = family_root(nf, p, m, t) + mag * Cx(std::cos(xa), std::sin(xa));
        }
        std::vector<Cx> lam(M);
        for (int m = 0; m < M; ++m) lam[m] = family_root(nf, p, m, t);
        bool hit = false;
        for (auto& sp : specs) {
            double td = std::pow(rt, double(sp.d));
            double dist = std::abs(x - lam[sp.m]);
            if (sp.inner) {
                if (dist > cfg.eps * td) continue;
                bool excl = false;
                for (int l = 0; l < M && !excl; ++l)
                    if (l != sp.m && nf.e[sp.m][l] > sp.d &&
                        dist <= cfg.C * std::pow(rt, double(nf.e[sp.m][l])))
                        excl = true;
                if (!excl) hit = true;
            } else {
                if (dist > cfg.C * td) continue;
                bool excl = false;
                for (int l = 0; l < M && !excl; ++l) {
                    if (l != sp.m && nf.e[sp.m][l] < sp.d) continue;
                    if (std::abs(x - lam[l]) <= cfg.eps * td) excl = true;
                }
                if (!excl) hit = true;
            }
            if (hit) break;
        }
        ++rep.covering_checked;
        if (!hit) {
            rep.covering_ok = false;
            rep.witness_x = x;
            rep.witness_t = t;
        }
    }
    return rep;
}

// ---------------- trivialization ----------------

namespace {

Cx dir_component(const FamilyValue& v, const NormalFamily& nf, const ParamPoint& d) {
    Cx acc = v.dv.at("tau1") * d.tau1 + v.dv.at("u0") * d.u0 + v.dv.at("sf") * d.sf;
    if (nf.joint) acc += v.dv.at("tau2") * d.tau2 + v.dv.at("sg") * d.sg;
    for (size_t k = 0; k < d.a.size(); ++k)
        for (auto& [alpha, val] : d.a[k]) acc += v.dv.at(dir_key((int)k, alpha)) * val;
    return acc;
}

ParamPoint pp_lerp(const ParamPoint& a, const ParamPoint& b, double s) {
    ParamPoint r = a;
    r.tau1 += s * (b.tau1 - a.tau1);
    r.tau2 += s * (b.tau2 - a.tau2);
    r.sf += s * (b.sf - a.sf);
    r.sg += s * (b.sg - a.sg);
    r.u0 += s * (b.u0 - a.u0);
    for (size_t k = 0; k < r.a.size(); ++k)
        for (auto& [alpha, val] : r.a[k]) {
            auto it = b.a[k].find(alpha);
            Cx bv = it == b.a[k].end() ? Cx(0) : it->second;
            val += s * (bv - val);
        }
    return r;
}

ParamPoint pp_diff(const ParamPoint& a, const ParamPoint& b) {
    ParamPoint r = b;
    r.tau1 -= a.tau1;
    r.tau2 -= a.tau2;
    r.sf -= a.sf;
    r.sg -= a.sg;
    r.u0 -= a.u0;
    for (size_t k = 0; k < r.a.size(); ++k)
        for (auto& [alpha, val] : r.a[k]) val -= a.a[k].at(alpha);
    return r;
}

} // namespace

std::pair<Cx, Cx> kuo_field(const NormalFamily& nf, const ParamPoint& p,
                            const ParamPoint& dir, Cx x, Cx y, Stratum st) {
    if (st == Stratum::P) return {Cx(0), Cx(0)};
    FamilyValue v = eval_family(nf, p, x, y, st == Stratum::X);
    Cx Fv = dir_component(v, nf, dir);
    double g2 = std::norm(v.dx) + std::norm(v.dy);
    if (g2 == 0.0) fail("deform.flow", "vanishing gradient off the parameter stratum");
    Cx scale = Fv / g2;
    return {-scale * std::conj(v.dx), -scale * std::conj(v.dy)};
}

std::vector<ParamPoint> joint_path(const NormalFamily& nf,
                                   const VerificationConfig& cfg) {
    if (!nf.joint) fail("deform.internal", "joint path of a single family");
    ParamPoint e0 = distinguished_point(nf, 0);
    ParamPoint e1 = distinguished_point(nf, 1);
    const DeformationSpace& D = nf.space;

    // exact affine zero test on a segment
    auto seg_ok = [&](const ParamPoint& a, const ParamPoint& b) {
        auto nonzero_on = [&](Cx z0, Cx z1) {
            // z(s) = z0 + s (z1 - z0) must avoid 0 on [0, 1]
            Cx dz = z1 - z0;
            if (dz == Cx(0)) return z0 != Cx(0);
            Cx s = -z0 / dz;
            return !(std::abs(s.imag()) < 1e-9 && s.real() > -1e-9 &&
                     s.real() < 1.0 + 1e-9);
        };
        if (!nonzero_on(a.u0, b.u0)) return false;
        auto av = [](const ParamPoint& p, int k, const Rat& al) {
            auto it = p.a[k].find(al);
            return it == p.a[k].end() ? Cx(0) : it->second;
        };
        for (size_t k = 0; k < D.lambda_p.size(); ++k)
            for (const Rat& al : D.lambda_p[k])
                if (!nonzero_on(av(a, (int)k, al), av(b, (int)k, al))) return false;
        for (auto& c : D.constraints) {
            Cx z0 = av(a, c.k1, c.alpha) - av(a, c.k2, c.alpha);
            Cx z1 = av(b, c.k1, c.alpha) - av(b, c.k2, c.alpha);
            if (c.equal) {
                if (z0 != Cx(0) || z1 != Cx(0)) return false;
            } else if (!nonzero_on(z0, z1)) {
                return false;
            }
        }
        return true;
    };

    if (!check_param(D, e0) || !check_param(D, e1))
        fail("deform.param", "distinguished point outside the deformation space");
    if (seg_ok(e0, e1)) return {e0, e1};

    // equality classes of (k, alpha) that must move together
    std::mt19937_64 rng(cfg.seed + 2);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int attempt = 0; attempt < cfg.path_retries; ++attempt) {
        ParamPoint mid = pp_lerp(e0, e1, 0.5);
        mid.u0 += Cx(uni(rng), uni(rng)) * 0.25 * std::abs(mid.u0);
        std::vector<std::vector<std::pair<int, Rat>>> classes;
        std::map<std::pair<int, std::string>, int> cls_of;
        for (size_t k = 0; k < D.lambda.size(); ++k)
            for (const Rat& al : D.lambda[k]) {
                cls_of[{(int)k, rat_str(al)}] = (int)classes.size();
                classes.push_back({{(int)k, al}});
            }
        for (auto& c : D.constraints) {
            if (!c.equal) continue;
            int c1 = cls_of[{c.k1, rat_str(c.alpha)}];
            int c2 = cls_of[{c.k2, rat_str(c.alpha)}];
            if (c1 == c2) continue;
            for (auto& kv : classes[c2]) {
                cls_of[{kv.first, rat_str(kv.second)}] = c1;
                classes[c1].push_back(kv);
            }
            classes[c2].clear();
        }
        for (auto& cl : classes) {
            if (cl.empty()) continue;
            Cx off(uni(rng), uni(rng));
            for (auto& [k, al] : cl) {
                Cx& v = mid.a[k][al];
                double scale = std::max(std::abs(v), 0.5);
                v += off * 0.3 * scale;
            }
        }
        if (check_param(D, mid) && seg_ok(e0, mid) && seg_ok(mid, e1))
            return {e0, mid, e1};
    }
    fail("deform.path", "no admissible path found within the retry budget");
}

FlowReport flow_trivialize(const NormalFamily& nf,
                           const std::vector<ParamPoint>& path,
                           const VerificationConfig& cfg) {
    if (path.size() < 2) fail("deform.internal", "path needs two points");
    std::mt19937_64 rng(cfg.seed + 3);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int M = (int)nf.root_branch.size();
    FlowReport rep;

    auto integrate = [&](Cx x0, Cx t0, Stratum st) {
        Cx x = x0, t = t0;
        for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
            ParamPoint dir = pp_diff(path[seg], path[seg + 1]);
            int steps = 256;
            auto rhs = [&](double s, Cx xx, Cx tt) {
                ParamPoint p = pp_lerp(path[seg], path[seg + 1], s);
                FamilyValue v = eval_family_t(nf, p, xx, tt, st == Stratum::X);
                Cx Fv = dir_component(v, nf, dir);
                Cx Ft = v.dy * double(nf.n) * ipow(tt, nf.n - 1);
                double g2 = std::norm(v.dx) + std::norm(Ft);
                if (g2 == 0.0) fail("deform.flow", "vanishing gradient along the flow");
                Cx scale = Fv / g2;
                return std::pair<Cx, Cx>{-scale * std::conj(v.dx),
                                         -scale * std::conj(Ft)};
            };
            double h = 1.0 / steps;
            for (int i = 0; i < steps; ++i) {
                double s = i * h;
                auto [k1x, k1t] = rhs(s, x, t);
                auto [k2x, k2t] = rhs(s + h / 2, x + h / 2 * k1x, t + h / 2 * k1t);
                auto [k3x, k3t] = rhs(s + h / 2, x + h / 2 * k2x, t + h / 2 * k2t);
                auto [k4x, k4t] = rhs(s + h, x + h * k3x, t + h * k3t);
                x += h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
                t += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
            }
        }
        return std::pair<Cx, Cx>{x, t};
    };

    double rt = std::pow(cfg.radii.front(), 1.0 / double(nf.n));
    const ParamPoint& p0 = path.front();
    const ParamPoint& p1 = path.back();

    for (int i = 0; i < cfg.flow_seeds; ++i) { // zero-set seeds
        double ang = 2.0 * std::numbers::pi * uni(rng);
        Cx t = rt * Cx(std::cos(ang), std::sin(ang));
        int m = (int)(uni(rng) * M) % M;
        Cx x = family_root(nf, p0, m, t);
        auto [x1, t1] = integrate(x, t, Stratum::X);
        FlowReport::Seed sd;
        sd.x0 = x;
        sd.y0 = ipow(t, nf.n);
        sd.x1 = x1;
        sd.y1 = ipow(t1, nf.n);
        sd.stratum = Stratum::X;
        double dist = 1e300;
        for (int l = 0; l < M; ++l)
            dist = std::min(dist, std::abs(x1 - family_root(nf, p1, l, t1)));
        sd.distance = dist;
        sd.ok = dist <= 1e-6;
        rep.max_distance = std::max(rep.max_distance, dist);
        rep.seeds.push_back(sd);
    }
    for (int i = 0; i < cfg.flow_seeds; ++i) { // off-zero seeds
        Cx x, t;
        double f0 = 0.0;
        for (int tries = 0; tries < 100; ++tries) {
            double ang = 2.0 * std::numbers::pi * uni(rng);
            t = rt * (0.5 + 0.5 * uni(rng)) * Cx(std::cos(ang), std::sin(ang));
            double mag = 1e-3 * std::pow(30.0, uni(rng));
            double xa = 2.0 * std::numbers::pi * uni(rng);
            x = mag * Cx(std::cos(xa), std::sin(xa));
            bool clear = true;
            for (int l = 0; l < M; ++l)
                if (std::abs(x - family_root(nf, p0, l, t)) < 0.3 * mag) clear = false;
            if (!clear) continue;
            f0 = std::abs(eval_family_t(nf, p0, x, t).F);
            if (f0 > 1e-30) break;
        }
        auto [x1, t1] = integrate(x, t, Stratum::U);
        double f1 = std::abs(eval_family_t(nf, p1, x1, t1).F);
        FlowReport::Seed sd;
        sd.x0 = x;
        sd.y0 = ipow(t, nf.n);
        sd.x1 = x1;
        sd.y1 = ipow(t1, nf.n);
        sd.stratum = Stratum::U;
        sd.drift = std::abs(f1 - f0) / f0;
        sd.ok = sd.drift <= 1e-6;
        rep.max_drift = std::max(rep.max_drift, sd.drift);
        rep.seeds.push_back(sd);
    }
    rep.ok = true;
    for (auto& s : rep.seeds)
        if (!s.ok) rep.ok = false;
    return rep;
}

} // namespace germ
