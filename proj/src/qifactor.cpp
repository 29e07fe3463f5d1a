#include "germ/qifactor.hpp"

#include "germ/error.hpp"

#include <algorithm>

namespace germ {

namespace {

SPoly conj_poly(const SPoly& f) {
    SPoly g = f;
    for (auto& v : g.c) v = v.conj();
    return g;
}

SPoly q_to_s(const QPoly& f) {
    std::vector<Scalar> c;
    for (auto& v : f.c) c.emplace_back(v);
    return SPoly(std::move(c));
}

bool is_squarefree(const QPoly& f) {
    return gcd_field(f, f.derivative()).degree() == 0;
}

} // namespace

std::vector<SPoly> factor_qi_squarefree_monic(const SPoly& f) {
    if (f.degree() <= 0) return {};
    if (f.degree() == 1) return {f};
    // shift until the norm N(x) = g(x) conj(g)(x) over Q is squarefree
    for (long s = 0; s < 64; ++s) {
        // g(x) = f(x - s*i)
        SPoly shift(std::vector<Scalar>{Scalar(Rat(0), Rat(-s)), Scalar(1)});
        SPoly g = f.compose(shift);
        SPoly prod = g * conj_poly(g);
        QPoly norm;
        norm.c.resize(prod.c.size());
        bool real = true;
        for (size_t k = 0; k < prod.c.size(); ++k) {
            if (prod.c[k].im != 0) { real = false; break; }
            norm.c[k] = prod.c[k].re;
        }
        if (!real) fail("factor.internal", "norm not rational");
        norm.normalize();
        if (!is_squarefree(norm)) continue;
        std::vector<SPoly> out;
        SPoly back(std::vector<Scalar>{Scalar(Rat(0), Rat(s)), Scalar(1)});
        for (auto& h : factor_q_squarefree_monic(norm)) {
            SPoly d = gcd_field(g, q_to_s(h));
            if (d.degree() <= 0) continue;
            out.push_back(d.compose(back).monic());
        }
        std::sort(out.begin(), out.end(), [](const SPoly& a, const SPoly& b) {
            if (a.degree() != b.degree()) return a.degree() < b.degree();
            return a.c < b.c;
        });
        int total = 0;
        for (auto& q : out) total += q.degree();
        if (total != f.degree())
            fail("factor.internal", "norm factor pullback lost degree");
        return out;
    }
    fail("factor.internal", "no squarefree norm shift found");
}

QiFactorization factor_qi(const SPoly& f) {
    if (f.zero()) fail("poly.zero-input", "factorization of 0");
    QiFactorization out;
    out.lead = f.lc();
    if (f.degree() == 0) return out;
    for (auto& [part, mult] : squarefree_decompose_field(f)) {
        for (auto& irr : factor_qi_squarefree_monic(part))
            out.factors.push_back({irr, mult});
    }
    return out;
}

} // namespace germ
