#include "germ/tower.hpp"

#include "germ/error.hpp"
#include "germ/zfactor.hpp"

#include <algorithm>
#include <map>

namespace germ {

namespace {

const Tower* tower_of(const TF& a, const TF& b) {
    if (a.tw && b.tw && a.tw != b.tw)
        fail("tower.mismatch", "mixing elements of different towers");
    return a.tw ? a.tw : b.tw;
}

} // namespace

// ---------------- TF field operations ----------------

bool is_zero(const TF& a) { return a.v.zero(); }

TF operator-(const TF& a) {
    if (!a.tw) return TF(nullptr, TElem::scalar(-a.v.base));
    return TF(a.tw, a.tw->neg(a.v));
}

TF operator+(const TF& a, const TF& b) {
    const Tower* t = tower_of(a, b);
    if (!t) return TF(nullptr, TElem::scalar(a.v.base + b.v.base));
    return TF(t, t->add(a.v, b.v));
}

TF operator-(const TF& a, const TF& b) { return a + (-b); }

TF operator*(const TF& a, const TF& b) {
    const Tower* t = tower_of(a, b);
    if (!t) return TF(nullptr, TElem::scalar(a.v.base * b.v.base));
    return TF(t, t->mul(a.v, b.v));
}

TF inv(const TF& a) {
    if (is_zero(a)) fail("math.div-zero", "inverting zero tower element");
    if (!a.tw) return TF(nullptr, TElem::scalar(germ::inv(a.v.base)));
    return TF(a.tw, a.tw->invert(a.v));
}

TF operator/(const TF& a, const TF& b) { return a * inv(b); }

bool operator==(const TF& a, const TF& b) { return is_zero(a - b); }

// ---------------- element arithmetic ----------------

TElem Tower::make(int level, std::vector<TElem> coeffs) const {
    while (!coeffs.empty() && coeffs.back().zero()) coeffs.pop_back();
    TElem e;
    e.level = level;
    e.up = std::move(coeffs);
    return e;
}

TElem Tower::promote(TElem e, int level) const {
    if (e.level > level) fail("tower.internal", "cannot demote tower element");
    while (e.level < level) {
        TElem w;
        w.level = e.level + 1;
        if (!e.zero()) w.up.push_back(std::move(e));
        e = std::move(w);
    }
    return e;
}

TElem Tower::add(const TElem& a0, const TElem& b0) const {
    int L = std::max(a0.level, b0.level);
    TElem a = promote(a0, L), b = promote(b0, L);
    if (L == 0) return TElem::scalar(a.base + b.base);
    std::vector<TElem> c = std::move(a.up);
    if (b.up.size() > c.size())
        c.resize(b.up.size(), promote(TElem(), L - 1));
    for (size_t i = 0; i < b.up.size(); ++i) c[i] = add(c[i], b.up[i]);
    return make(L, std::move(c));
}

TElem Tower::neg(const TElem& a) const {
    if (a.level == 0) return TElem::scalar(-a.base);
    TElem r = a;
    for (auto& v : r.up) v = neg(v);
    return r;
}

TElem Tower::mul(const TElem& a0, const TElem& b0) const {
    int L = std::max(a0.level, b0.level);
    TElem a = promote(a0, L), b = promote(b0, L);
    if (L == 0) return TElem::scalar(a.base * b.base);
    if (a.up.empty() || b.up.empty()) return make(L, {});
    std::vector<TElem> r(a.up.size() + b.up.size() - 1, promote(TElem(), L - 1));
    for (size_t i = 0; i < a.up.size(); ++i) {
        if (a.up[i].zero()) continue;
        for (size_t j = 0; j < b.up.size(); ++j)
            r[i + j] = add(r[i + j], mul(a.up[i], b.up[j]));
    }
    // reduce modulo the defining polynomial of level L (monic)
    const TPoly& m = minpolys_[L - 1];
    int dm = m.degree();
    while (static_cast<int>(r.size()) > dm) {
        TElem c = std::move(r.back());
        r.pop_back();
        if (c.zero()) continue;
        int k = static_cast<int>(r.size()) - dm;
        for (int i = 0; i < dm; ++i)
            r[k + i] = add(r[k + i], neg(mul(c, promote(m.c[i].v, L - 1))));
    }
    return make(L, std::move(r));
}

TElem Tower::invert(const TElem& a) const {
    if (a.zero()) fail("math.div-zero", "inverting zero tower element");
    int L = a.level;
    if (L == 0) return TElem::scalar(germ::inv(a.base));
    std::vector<TF> ac;
    for (auto& v : a.up) ac.emplace_back(this, v);
    TPoly A(std::move(ac)), g, s;
    half_ext_gcd(A, minpolys_[L - 1], g, s);
    if (g.degree() != 0)
        fail("tower.internal", "reducible minimal polynomial detected");
    std::vector<TElem> r;
    for (auto& v : s.c) r.push_back(promote(v.v, L - 1));
    return make(L, std::move(r));
}

int Tower::degree() const {
    int d = 1;
    for (auto& m : minpolys_) d *= m.degree();
    return d;
}

TF Tower::gen(int level) const {
    if (level < 1 || level > levels())
        fail("tower.internal", "generator level out of range");
    std::vector<TElem> up{promote(TElem(), level - 1),
                          promote(TElem::scalar(Scalar(1)), level - 1)};
    TElem e;
    e.level = level;
    e.up = std::move(up);
    return TF(this, std::move(e));
}

TF Tower::adjoin(const TPoly& p) {
    if (p.degree() < 2) fail("tower.internal", "adjoining root of linear polynomial");
    if (degree() * p.degree() > cap_)
        fail("tower.degree-cap",
             "extension degree exceeds cap " + std::to_string(cap_));
    int top = levels();
    TPoly q = p.monic();
    std::vector<TF> c;
    for (auto& v : q.c) c.emplace_back(this, promote(v.v, top));
    minpolys_.push_back(TPoly(std::move(c)));
    return gen(levels());
}

// ---------------- factorization over the tower ----------------

// Res_gamma(minpoly_level, f) with f viewed as a polynomial in the level
// generator: pushes coefficients from `level` down to level-1.
TPoly Tower::eliminate(const TPoly& f, int level) const {
    const TPoly& m = minpolys_[level - 1];
    int dm = m.degree();
    using XP = UniPoly<TF>; // polynomial in x over level-1 coefficients
    UniPoly<XP> A, B;
    for (int j = 0; j <= dm; ++j)
        A.c.push_back(XP::constant(TF(this, promote(m.coeff(j).v, level - 1))));
    A.normalize();
    B.c.assign(dm, XP());
    for (int i = 0; i <= f.degree(); ++i) {
        TElem v = promote(f.coeff(i).v, level);
        for (size_t j = 0; j < v.up.size(); ++j) {
            if (B.c[j].c.size() <= static_cast<size_t>(i))
                B.c[j].c.resize(i + 1, TF());
            B.c[j].c[i] = TF(this, v.up[j]);
        }
    }
    for (auto& bc : B.c) bc.normalize();
    B.normalize();
    return resultant(A, B);
}

SPoly Tower::norm_qi(const TPoly& f) const {
    TPoly g = f;
    for (int k = levels(); k >= 1; --k) {
        bool uses = false;
        std::vector<TElem> at_k;
        for (auto& v : g.c) {
            at_k.push_back(promote(v.v, k));
            if (at_k.back().up.size() > 1) uses = true;
        }
        if (uses) {
            g = eliminate(g, k);
        } else {
            // generator k absent: just strip the wrapper level
            std::vector<TF> c;
            for (auto& v : at_k)
                c.emplace_back(this, v.up.empty() ? promote(TElem(), k - 1) : v.up[0]);
            g = TPoly(std::move(c));
        }
    }
    std::vector<Scalar> c;
    for (auto& v : g.c) {
        if (v.v.level != 0) fail("tower.internal", "norm did not reach the base");
        c.push_back(v.v.base);
    }
    return SPoly(std::move(c));
}

std::vector<TPoly> Tower::factor_at(int level, const TPoly& f) const {
    if (f.degree() == 1) return {f.monic()};
    if (level == 0) {
        std::vector<Scalar> c;
        for (auto& v : f.c) {
            if (v.v.level != 0) fail("tower.internal", "level-0 coefficient expected");
            c.push_back(v.v.base);
        }
        std::vector<TPoly> out;
        for (auto& h : factor_qi_squarefree_monic(SPoly(std::move(c)))) {
            std::vector<TF> hc;
            for (auto& v : h.c) hc.emplace_back(this, TElem::scalar(v));
            out.push_back(TPoly(std::move(hc)));
        }
        return out;
    }

    int dm = minpolys_[level - 1].degree();
    TF gamma = gen(level);
    for (long sft = 0; sft < 64; ++sft) {
        TF c0 = -(TF(sft) * gamma);
        TPoly g = f.compose(TPoly(std::vector<TF>{c0, TF(1)}));
        TPoly N = eliminate(g, level);
        if (N.degree() != f.degree() * dm) continue; // degenerate shift
        TPoly Nm = N.monic();
        if (gcd_field(Nm, Nm.derivative()).degree() != 0) continue;
        auto norm_factors = factor_at(level - 1, Nm);
        std::vector<TPoly> out;
        int total = 0;
        TPoly back(std::vector<TF>{TF((long)sft) * gamma, TF(1)});
        for (auto& h : norm_factors) {
            TPoly d = gcd_field(g, h);
            if (d.degree() <= 0) continue;
            out.push_back(d.compose(back).monic());
            total += d.degree();
        }
        if (total != f.degree())
            fail("tower.internal", "norm pullback lost degree");
        return out;
    }
    fail("tower.internal", "no squarefree norm shift found");
}

std::vector<TPoly> Tower::factor_squarefree(const TPoly& f) const {
    if (f.degree() <= 0) return {};
    return factor_at(levels(), f.monic());
}

std::vector<std::pair<TF, int>> Tower::split_completely(const TPoly& f) {
    std::vector<std::pair<TF, int>> roots;
    for (auto& [part, mult] : squarefree_decompose_field(f.monic())) {
        std::vector<TPoly> stack{part};
        while (!stack.empty()) {
            TPoly g = stack.back().monic();
            stack.pop_back();
            if (g.degree() == 1) {
                roots.push_back({-g.c[0], mult});
                continue;
            }
            auto facs = factor_squarefree(g);
            if (facs.size() == 1 && facs[0].degree() == g.degree()) {
                TF gamma = adjoin(facs[0]);
                roots.push_back({gamma, mult});
                TPoly lin(std::vector<TF>{-gamma, TF(1)});
                stack.push_back(g / lin);
            } else {
                for (auto& h : facs) stack.push_back(h);
            }
        }
    }
    return roots;
}

// ---------------- roots of unity ----------------

namespace {

// m-th cyclotomic polynomial over Q
QPoly cyclotomic(int m, std::map<int, QPoly>& memo) {
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    std::vector<Rat> xm(m + 1);
    xm[0] = Rat(-1);
    xm[m] = Rat(1);
    QPoly num((std::vector<Rat>(xm)));
    QPoly den(std::vector<Rat>{Rat(1)});
    for (int d = 1; d < m; ++d)
        if (m % d == 0) den = den * cyclotomic(d, memo);
    QPoly phi = exact_div(num, den);
    memo[m] = phi;
    return phi;
}

} // namespace

TF Tower::root_of_unity(int m) {
    if (m <= 1) return from_scalar(Scalar(1));
    if (m == 2) return from_scalar(Scalar(-1));
    if (m == 4) return from_scalar(Scalar::i());
    for (auto& [k, v] : unity_cache_)
        if (k == m) return v;
    std::map<int, QPoly> memo;
    QPoly phi = cyclotomic(m, memo);
    std::vector<TF> c;
    for (auto& v : phi.c) c.push_back(from_scalar(Scalar(v)));
    TPoly p(std::move(c));
    auto facs = factor_squarefree(p);
    TF theta;
    bool found = false;
    for (auto& h : facs)
        if (h.degree() == 1) {
            theta = -h.c[0];
            found = true;
            break;
        }
    if (!found) theta = adjoin(facs.front());
    unity_cache_.push_back({m, theta});
    return theta;
}

} // namespace germ
