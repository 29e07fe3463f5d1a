#include "germ/puiseux.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace germ {

namespace {

using TP1 = UniPoly<TF>;  // series variable t
using TP2 = UniPoly<TP1>; // expansion variable X over t

// positive-slope lower-hull edge of the support of P in the (X-exp, t-ord)
// plane; the attached roots have t-order u/v, gcd(u, v) = 1
struct PEdge {
    long u, v;
    long ia, ib; // X-exponent range, ia < ib
    long oa, ob; // t-orders at ia, ib; oa > ob
};

std::vector<PEdge> positive_edges(const TP2& P) {
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i < (long)P.c.size(); ++i) {
        long o = P.c[i].order();
        if (o >= 0) pts.push_back({i, o});
    }
    std::vector<std::pair<long, long>> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cross = (b.first - a.first) * (p.second - a.second) -
                         (b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<PEdge> edges;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        auto [ia, oa] = hull[k];
        auto [ib, ob] = hull[k + 1];
        if (oa <= ob) break; // convexity: slopes only grow from here on
        long g = std::gcd(oa - ob, ib - ia);
        edges.push_back({(oa - ob) / g, (ib - ia) / g, ia, ib, oa, ob});
    }
    return edges;
}

TPoly edge_polynomial(const TP2& P, const PEdge& e) {
    long di = e.ib - e.ia;
    std::vector<TF> c(di + 1, TF());
    for (long i = e.ia; i <= e.ib; ++i) {
        long num = e.oa * di + (e.ob - e.oa) * (i - e.ia);
        if (num % di) continue;
        c[i - e.ia] = P.c[i].coeff((int)(num / di));
    }
    return TPoly(std::move(c));
}

// group the edge roots into orbits under z -> zeta_v^u z; one representative
// per orbit (each orbit yields one branch with ramification multiplied by v)
std::vector<std::pair<TF, int>> orbit_reps(std::vector<std::pair<TF, int>> roots,
                                           long u, long v, Tower& tw) {
    if (v == 1) return roots;
    TF step = pow_ring(tw.root_of_unity((int)v), (int)(u % v));
    std::vector<bool> used(roots.size(), false);
    std::vector<std::pair<TF, int>> reps;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        reps.push_back(roots[i]);
        TF cur = roots[i].first;
        for (long l = 1; l < v; ++l) {
            cur = cur * step;
            bool found = false;
            for (size_t j = 0; j < roots.size(); ++j) {
                if (used[j] || roots[j].second != roots[i].second) continue;
                if (roots[j].first == cur) {
                    used[j] = true;
                    found = true;
                    break;
                }
            }
            if (!found) fail("puiseux.internal", "edge-root orbit not closed");
        }
    }
    return reps;
}

// q(t^v) * t^sh, keeping t-orders <= keep
TP1 stretch_shift(const TP1& q, long v, long sh, long keep) {
    TP1 s;
    for (long j = 0; j < (long)q.c.size(); ++j) {
        if (is_zero(q.c[j])) continue;
        long o = v * j + sh;
        if (o > keep) break;
        if ((long)s.c.size() <= o) s.c.resize(o + 1, TF());
        s.c[o] = q.c[j];
    }
    s.normalize();
    return s;
}

// P(t^u (c + X), t^v) / t^w with w the order of the edge form; t-degrees
// beyond cap are dropped (they only influence terms past the truncation)
TP2 substitute(const TP2& P, long u, long v, const TF& c, long cap) {
    long w = -1;
    for (long i = 0; i < (long)P.c.size(); ++i) {
        long o = P.c[i].order();
        if (o < 0) continue;
        long cand = u * i + v * o;
        if (w < 0 || cand < w) w = cand;
    }
    if (w < 0) fail("puiseux.internal", "substituting into the zero polynomial");
    long keep = w + cap;
    TP2 res;
    UniPoly<TF> pw = UniPoly<TF>::constant(TF(1));
    UniPoly<TF> base(std::vector<TF>{c, TF(1)});
    for (long i = 0; i < (long)P.c.size(); ++i) {
        if (!P.c[i].zero()) {
            TP1 s = stretch_shift(P.c[i], v, u * i, keep);
            if (!s.zero()) {
                if ((long)res.c.size() <= (long)pw.degree())
                    res.c.resize(pw.degree() + 1, TP1());
                for (int a = 0; a <= pw.degree(); ++a) {
                    if (is_zero(pw.c[a])) continue;
                    res.c[a] += s.scaled(pw.c[a]);
                }
            }
        }
        if (i + 1 < (long)P.c.size()) pw = pw * base;
    }
    for (auto& q : res.c) {
        if (q.zero()) continue;
        if (q.order() < w)
            fail("puiseux.internal", "substitution dropped below the edge order");
        q.c.erase(q.c.begin(), q.c.begin() + w);
        q.normalize();
    }
    res.normalize();
    return res;
}

struct Item {
    TP2 P;
    long n; // y = t^n
    Rat shift;
    std::vector<PuiseuxTerm> prefix;
    std::vector<Rat> chars;
};

} // namespace

TF coeff_at(const PuiseuxRoot& r, const Rat& alpha) {
    for (auto& t : r.terms)
        if (t.alpha == alpha) return t.coeff;
    return TF();
}

std::vector<Branch> puiseux_expand(const BiPoly& factor, const Rat& trunc, Tower& tw) {
    if (factor.zero() || factor.deg_x() < 1)
        fail("poly.degenerate", "factor must have positive x-degree");
    if (trunc < 1) fail("puiseux.truncation", "truncation bound below 1");

    TP2 P0;
    P0.c.assign(factor.deg_x() + 1, TP1());
    for (auto& [k, v] : factor.terms()) {
        auto& q = P0.c[k.first].c;
        if ((int)q.size() <= k.second) q.resize(k.second + 1, TF());
        q[k.second] = tw.from_scalar(v);
    }
    for (auto& q : P0.c) q.normalize();
    P0.normalize();

    long expected = 0;
    for (long i = 0; i < (long)P0.c.size(); ++i)
        if (!P0.c[i].zero()) {
            expected = i; // x-multiplicity: roots identically zero
            break;
        }
    for (auto& e : positive_edges(P0)) expected += e.ib - e.ia;

    std::vector<Branch> out;
    auto emit = [&](const Item& it) {
        Branch b;
        b.id = (int)out.size() + 1;
        b.ram = (int)it.n;
        b.char_exponents = it.chars;
        b.lambda_p = it.chars;
        b.first.branch = b.id;
        b.first.conj = b.ram;
        b.first.terms = it.prefix;
        b.first.trunc = trunc;
        out.push_back(std::move(b));
    };

    std::vector<Item> stack;
    stack.push_back({std::move(P0), 1, Rat(0), {}, {}});
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        int emitted_here = 0;
        if (it.P.coeff(0).zero()) {
            // the prefix itself is a root (exact, or resolved past trunc)
            emit(it);
            ++emitted_here;
            it.P.c.erase(it.P.c.begin());
            it.P.normalize();
            if (!it.P.zero() && it.P.coeff(0).zero())
                fail("puiseux.truncation", "roots not separated below the truncation bound");
        }
        if (it.P.degree() < 1) continue;
        for (auto& e : positive_edges(it.P)) {
            Rat alpha = it.shift + Rat(e.u) / Rat(it.n * e.v);
            if (alpha > trunc) {
                if (e.ib - e.ia == 1 && ++emitted_here == 1) {
                    emit(it); // single simple root continuing past trunc
                    continue;
                }
                fail("puiseux.truncation",
                     "roots not separated below the truncation bound");
            }
            TPoly phi = edge_polynomial(it.P, e);
            auto reps = orbit_reps(tw.split_completely(phi), e.u, e.v, tw);
            for (auto& [c, mult] : reps) {
                (void)mult;
                Item ni;
                ni.n = it.n * e.v;
                ni.shift = alpha;
                ni.prefix = it.prefix;
                ni.prefix.push_back({alpha, c});
                ni.chars = it.chars;
                if (e.v > 1) ni.chars.push_back(alpha);
                Rat depth = (trunc - alpha) * ni.n;
                long need = depth > 0 ? rat_ceil(depth).convert_to<long>() : 0;
                long cap = (need + 1) * (it.P.degree() + 1) + e.u * it.P.degree() + 4;
                ni.P = substitute(it.P, e.u, e.v, c, cap);
                stack.push_back(std::move(ni));
            }
        }
    }

    long total = 0;
    for (auto& b : out) total += b.ram;
    if (total != expected)
        fail("puiseux.internal", "branch ramifications do not account for all roots");
    return out;
}

Rat sufficient_truncation(const BiPoly& f) {
    if (f.zero()) fail("poly.zero-input", "truncation bound of 0");
    if (f.deg_x() >= 2) {
        // nonzero discriminant means f is already squarefree, and the
        // subresultant chain is far cheaper than a squarefree decomposition
        auto o = order_at_zero(discriminant_x(f));
        if (o) return Rat(*o + 1);
    }
    BiPoly sq = BiPoly::constant(Scalar(1));
    for (auto& [part, mult] : squarefree_decompose(f).parts) {
        (void)mult;
        sq = sq * part;
    }
    if (sq.deg_x() < 2) return Rat(1);
    auto o = order_at_zero(discriminant_x(sq));
    if (!o) fail("poly.degenerate", "vanishing discriminant: germ not transverse");
    return Rat(*o + 1);
}

PuiseuxRoot conjugate_expansion(const Branch& b, int j, Tower& tw) {
    PuiseuxRoot r = b.first;
    r.conj = j;
    int m = b.ram;
    if (m == 1) return r;
    TF theta = tw.root_of_unity(m);
    for (auto& t : r.terms) {
        Rat am = t.alpha * m;
        if (rat_den(am) != 1)
            fail("puiseux.internal", "exponent denominator exceeds the ramification");
        long e = ((rat_num(am) * j) % m).convert_to<long>();
        if (e) t.coeff = t.coeff * pow_ring(theta, (int)e);
    }
    return r;
}

void canonical_first_root(Branch& b, Tower& tw, Embedding& em) {
    int m = b.ram;
    if (m <= 1) return;
    std::vector<PuiseuxRoot> cand;
    for (int j = 1; j <= m; ++j) cand.push_back(conjugate_expansion(b, j, tw));
    int best = m - 1; // j = m is the current first root
    for (int j = 0; j < m; ++j) {
        if (j == best) continue;
        int c = 0;
        for (const Rat& a : b.char_exponents) {
            c = em.compare_arg(coeff_at(cand[j], a), coeff_at(cand[best], a));
            if (c) break;
        }
        if (c < 0) best = j;
        else if (c == 0)
            fail("puiseux.tie", "distinct conjugates with identical argument sequence");
    }
    b.first = cand[best];
    b.first.conj = m;
}

Rat contact_order(const PuiseuxRoot& r1, const PuiseuxRoot& r2) {
    Rat upto = std::min(r1.trunc, r2.trunc);
    size_t i = 0, j = 0;
    while (i < r1.terms.size() || j < r2.terms.size()) {
        Rat a1 = i < r1.terms.size() ? r1.terms[i].alpha : upto + 1;
        Rat a2 = j < r2.terms.size() ? r2.terms[j].alpha : upto + 1;
        Rat a = std::min(a1, a2);
        if (a > upto) break;
        TF c1 = a1 == a ? r1.terms[i++].coeff : TF();
        TF c2 = a2 == a ? r2.terms[j++].coeff : TF();
        if (!(c1 == c2)) return a;
    }
    fail("puiseux.truncation", "roots agree up to the truncation order");
}

} // namespace germ
