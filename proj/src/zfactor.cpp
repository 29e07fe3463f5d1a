#include "germ/zfactor.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace germ {

namespace {

// ---------------- F_p polynomial arithmetic ----------------

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

struct FpPoly {
    std::vector<u64> c; // lowest first

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    u64 lc() const { return c.back(); }
};

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
    if (a.zero() || b.zero()) return {};
    FpPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + static_cast<unsigned __int128>(a.c[i]) * b.c[j]) % p;
    }
    r.trim();
    return r;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b, u64 p) {
    u64 li = invmod(b.lc(), p);
    while (a.deg() >= b.deg()) {
        u64 f = mulmod(a.lc(), li, p);
        int k = a.deg() - b.deg();
        for (int i = 0; i <= b.deg(); ++i) {
            u64 sub = mulmod(f, b.c[i], p);
            u64& t = a.c[k + i];
            t = (t + p - sub) % p;
        }
        a.trim();
        if (a.zero()) break;
    }
    return a;
}

FpPoly fp_monic(FpPoly a, u64 p) {
    if (a.zero()) return a;
    u64 li = invmod(a.lc(), p);
    for (auto& v : a.c) v = mulmod(v, li, p);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
    while (!b.zero()) {
        FpPoly r = fp_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

FpPoly fp_deriv(const FpPoly& a, u64 p) {
    FpPoly r;
    for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mulmod(a.c[i], i % p, p));
    r.trim();
    return r;
}

FpPoly fp_powmod_big(FpPoly base, Int e, const FpPoly& m, u64 p) {
    FpPoly r;
    r.c = {1};
    base = fp_rem(std::move(base), m, p);
    while (e > 0) {
        if ((e & 1) != 0) r = fp_rem(fp_mul(r, base, p), m, p);
        base = fp_rem(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// x^(p^k) mod f, by iterating frobenius powers
FpPoly fp_xq(const FpPoly& f, u64 p) {
    FpPoly x;
    x.c = {0, 1};
    return fp_powmod_big(x, Int(p), f, p);
}

// distinct-degree factorization of squarefree monic f: list of (product, degree)
std::vector<std::pair<FpPoly, int>> fp_ddf(FpPoly f, u64 p) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly h; // x^(p^d) mod f
    h.c = {0, 1};
    int d = 0;
    while (f.deg() >= 2 * (d + 1)) {
        ++d;
        h = fp_powmod_big(h, Int(p), f, p);
        FpPoly hm = h;
        // h - x
        if (hm.c.size() < 2) hm.c.resize(2, 0);
        hm.c[1] = (hm.c[1] + p - 1) % p;
        hm.trim();
        FpPoly g = fp_gcd(f, hm, p);
        if (g.deg() > 0) {
            out.push_back({g, d});
            // f /= g
            FpPoly q;
            {
                // synthetic division (g monic)
                FpPoly a = f;
                q.c.assign(a.deg() - g.deg() + 1, 0);
                while (a.deg() >= g.deg()) {
                    u64 fq = a.lc();
                    int k = a.deg() - g.deg();
                    q.c[k] = fq;
                    for (int i = 0; i <= g.deg(); ++i) {
                        u64 sub = mulmod(fq, g.c[i], p);
                        a.c[k + i] = (a.c[k + i] + p - sub) % p;
                    }
                    a.trim();
                    if (a.zero()) break;
                }
                q.trim();
            }
            f = q;
            // recompute h mod smaller f
            h = fp_rem(std::move(h), f, p);
        }
    }
    if (f.deg() > 0) out.push_back({f, f.deg()});
    return out;
}

FpPoly fp_rem_quotient(const FpPoly& a0, const FpPoly& b, u64 p);

// equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f, all
// irreducible factors of degree d
void fp_edf(const FpPoly& f, int d, u64 p, std::mt19937_64& rng,
            std::vector<FpPoly>& out) {
    if (f.deg() == d) {
        out.push_back(fp_monic(f, p));
        return;
    }
    Int e = (boost::multiprecision::pow(Int(p), d) - 1) / 2;
    while (true) {
        FpPoly a;
        a.c.resize(f.deg());
        for (auto& v : a.c) v = rng() % p;
        a.trim();
        if (a.deg() < 1) continue;
        FpPoly b = fp_powmod_big(a, e, f, p);
        if (b.zero()) continue;
        b.c[0] = (b.c[0] + p - 1) % p; // b - 1
        b.trim();
        FpPoly g = fp_gcd(f, b, p);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            FpPoly q = fp_monic(fp_rem_quotient(f, g, p), p);
            fp_edf(g, d, p, rng, out);
            fp_edf(q, d, p, rng, out);
            return;
        }
    }
}

FpPoly fp_rem_quotient(const FpPoly& a0, const FpPoly& b, u64 p) {
    FpPoly a = a0, q;
    u64 li = invmod(b.lc(), p);
    if (a.deg() < b.deg()) return {};
    q.c.assign(a.deg() - b.deg() + 1, 0);
    while (a.deg() >= b.deg()) {
        u64 f = mulmod(a.lc(), li, p);
        int k = a.deg() - b.deg();
        q.c[k] = f;
        for (int i = 0; i <= b.deg(); ++i) {
            u64 sub = mulmod(f, b.c[i], p);
            a.c[k + i] = (a.c[k + i] + p - sub) % p;
        }
        a.trim();
        if (a.zero()) break;
    }
    q.trim();
    return q;
}

// ---------------- Z/M polynomial helpers (M = p^k) ----------------

using MPoly = std::vector<Int>; // lowest first, coefficients in [0, M)

void m_trim(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Int m_norm(Int v, const Int& M) {
    v %= M;
    if (v < 0) v += M;
    return v;
}

MPoly m_mul(const MPoly& a, const MPoly& b, const Int& M) {
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& v : r) v = m_norm(v, M);
    m_trim(r);
    return r;
}

MPoly m_add(MPoly a, const MPoly& b, const Int& M) {
    if (b.size() > a.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = m_norm(a[i] + b[i], M);
    m_trim(a);
    return a;
}

MPoly m_sub(MPoly a, const MPoly& b, const Int& M) {
    if (b.size() > a.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] = m_norm(a[i] - b[i], M);
    m_trim(a);
    return a;
}

// divrem by a monic divisor
std::pair<MPoly, MPoly> m_divrem_monic(MPoly a, const MPoly& b, const Int& M) {
    MPoly q;
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 >= db)
        q.assign(a.size() - b.size() + 1, Int(0));
    while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
        Int f = a.back();
        int k = static_cast<int>(a.size()) - 1 - db;
        q[k] = f;
        for (int i = 0; i <= db; ++i) a[k + i] = m_norm(a[k + i] - f * b[i], M);
        m_trim(a);
        if (a.empty()) break;
        if (static_cast<int>(a.size()) - 1 < db) break;
    }
    m_trim(q);
    return {q, a};
}

struct HenselNode {
    MPoly g, h, s, t; // f = g*h, s*g + t*h = 1 (mod current modulus)
    int lo = 0, hi = 0; // factor index range [lo, hi)
};

// one quadratic lifting step: modulus m -> m^2 (or to M)
void hensel_step(const MPoly& f, HenselNode& n, const Int& M) {
    // e = f - g h
    MPoly e = m_sub(f, m_mul(n.g, n.h, M), M);
    auto [q, r] = m_divrem_monic(m_mul(n.s, e, M), n.h, M);
    MPoly g1 = m_add(m_add(n.g, m_mul(n.t, e, M), M), m_mul(q, n.g, M), M);
    MPoly h1 = m_add(n.h, r, M);
    // refresh bezout pair
    MPoly b = m_sub(m_add(m_mul(n.s, g1, M), m_mul(n.t, h1, M), M), MPoly{Int(1)}, M);
    auto [c, d] = m_divrem_monic(m_mul(n.s, b, M), h1, M);
    MPoly s1 = m_sub(n.s, d, M);
    MPoly t1 = m_sub(m_sub(n.t, m_mul(n.t, b, M), M), m_mul(c, g1, M), M);
    n.g = std::move(g1);
    n.h = std::move(h1);
    n.s = std::move(s1);
    n.t = std::move(t1);
}

// extended gcd for coprime monic-ish polys mod p: s*g + t*h = 1
void fp_ext_gcd(const FpPoly& g, const FpPoly& h, u64 p, FpPoly& s, FpPoly& t) {
    FpPoly r0 = g, r1 = h;
    FpPoly s0, s1, t0, t1;
    s0.c = {1};
    t1.c = {1};
    while (!r1.zero()) {
        FpPoly q = fp_rem_quotient(r0, r1, p);
        FpPoly r2 = fp_rem(r0, r1, p);
        FpPoly s2 = r2; // placeholder shape; recompute properly below
        // s2 = s0 - q*s1 ; t2 = t0 - q*t1
        {
            FpPoly qs = fp_mul(q, s1, p), qt = fp_mul(q, t1, p);
            s2 = s0;
            if (qs.c.size() > s2.c.size()) s2.c.resize(qs.c.size(), 0);
            for (size_t i = 0; i < qs.c.size(); ++i) s2.c[i] = (s2.c[i] + p - qs.c[i]) % p;
            s2.trim();
            FpPoly t2 = t0;
            if (qt.c.size() > t2.c.size()) t2.c.resize(qt.c.size(), 0);
            for (size_t i = 0; i < qt.c.size(); ++i) t2.c[i] = (t2.c[i] + p - qt.c[i]) % p;
            t2.trim();
            r0 = std::move(r1); r1 = std::move(r2);
            s0 = std::move(s1); s1 = std::move(s2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
    }
    // r0 = s0*g + t0*h is a nonzero constant
    u64 li = invmod(r0.c[0], p);
    for (auto& v : s0.c) v = mulmod(v, li, p);
    for (auto& v : t0.c) v = mulmod(v, li, p);
    s = s0;
    t = t0;
}

MPoly fp_to_m(const FpPoly& a) {
    MPoly r;
    for (u64 v : a.c) r.push_back(Int(v));
    return r;
}

// multifactor Hensel lifting of monic f = prod(facs) from mod p to mod M = p^K
std::vector<MPoly> hensel_lift(const MPoly& f, const std::vector<FpPoly>& facs,
                               u64 p, const Int& M, int steps) {
    if (facs.size() == 1) {
        MPoly g = f;
        for (auto& v : g) v = m_norm(v, M);
        return {g};
    }
    size_t half = facs.size() / 2;
    FpPoly g0, h0;
    g0.c = {1};
    h0.c = {1};
    for (size_t i = 0; i < half; ++i) g0 = fp_mul(g0, facs[i], p);
    for (size_t i = half; i < facs.size(); ++i) h0 = fp_mul(h0, facs[i], p);
    FpPoly s0, t0;
    fp_ext_gcd(g0, h0, p, s0, t0);
    HenselNode node{fp_to_m(g0), fp_to_m(h0), fp_to_m(s0), fp_to_m(t0)};
    for (int i = 0; i < steps; ++i) hensel_step(f, node, M);
    std::vector<FpPoly> left(facs.begin(), facs.begin() + half);
    std::vector<FpPoly> right(facs.begin() + half, facs.end());
    std::vector<MPoly> out = hensel_lift(node.g, left, p, M, steps);
    std::vector<MPoly> out2 = hensel_lift(node.h, right, p, M, steps);
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

// ---------------- integer-polynomial helpers ----------------

using IPoly = std::vector<Int>;

void i_trim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly i_mul(const IPoly& a, const IPoly& b) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    i_trim(r);
    return r;
}

// exact division test over Z for monic divisor candidates
bool i_divides_monic(const IPoly& f, const IPoly& d, IPoly* quot) {
    IPoly a = f, q;
    int dd = static_cast<int>(d.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < dd) return false;
    q.assign(a.size() - d.size() + 1, Int(0));
    while (static_cast<int>(a.size()) - 1 >= dd && !a.empty()) {
        Int c = a.back();
        int k = static_cast<int>(a.size()) - 1 - dd;
        q[k] = c;
        for (int i = 0; i <= dd; ++i) a[k + i] -= c * d[i];
        i_trim(a);
        if (a.empty()) break;
        if (static_cast<int>(a.size()) - 1 < dd) break;
    }
    if (!a.empty()) return false;
    if (quot) *quot = q;
    return true;
}

Int i_maxabs(const IPoly& a) {
    Int m = 0;
    for (auto& v : a) {
        Int av = v < 0 ? Int(-v) : v;
        if (av > m) m = av;
    }
    return m;
}

// irreducible monic factors over Z of a squarefree monic integer polynomial
std::vector<IPoly> factor_z_monic_squarefree(const IPoly& f0) {
    IPoly f = f0;
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};

    // pick a prime keeping f squarefree mod p
    static const u64 primes[] = {1000003, 1000033, 1000037, 1000039, 1000081,
                                 1000099, 1000117, 1000121, 1000133, 1000151,
                                 1000159, 1000171, 1000183, 1000187, 1000193,
                                 1000199, 1000211, 1000213, 1000231, 1000249};
    u64 p = 0;
    FpPoly fp;
    for (u64 cand : primes) {
        FpPoly g;
        for (auto& v : f) {
            Int m = v % Int(cand);
            if (m < 0) m += Int(cand);
            g.c.push_back(m.convert_to<u64>());
        }
        g.trim();
        if (g.deg() != n) continue;
        FpPoly d = fp_deriv(g, cand);
        if (fp_gcd(g, d, cand).deg() == 0) {
            p = cand;
            fp = g;
            break;
        }
    }
    if (!p) fail("factor.no-prime", "no suitable prime found for factorization");

    std::mt19937_64 rng(0x5eed1234abcdULL);
    std::vector<FpPoly> modular;
    for (auto& [prod, d] : fp_ddf(fp, p)) fp_edf(prod, d, p, rng, modular);
    std::sort(modular.begin(), modular.end(),
              [](const FpPoly& a, const FpPoly& b) { return a.c < b.c; });
    if (modular.size() == 1) return {f};

    // lift to p^K with p^K > 2 * factor coefficient bound
    Int norm2 = 0;
    for (auto& v : f) norm2 += v * v;
    Int bound = (Int(1) << (n + 2)) * (boost::multiprecision::sqrt(norm2) + 1);
    Int M(p);
    int steps = 0;
    while (M <= 2 * bound) {
        M *= M;
        ++steps;
    }
    MPoly fm;
    for (auto& v : f) fm.push_back(m_norm(v, M));
    std::vector<MPoly> lifted = hensel_lift(fm, modular, p, M, steps);

    // subset recombination
    std::vector<IPoly> out;
    std::vector<int> alive(lifted.size(), 1);
    IPoly rem = f;
    int r = static_cast<int>(lifted.size());
    auto to_symmetric = [&](const MPoly& a) {
        IPoly s;
        for (auto v : a) {
            if (v > M / 2) v -= M;
            s.push_back(v);
        }
        i_trim(s);
        return s;
    };
    for (int card = 1; card <= r; ++card) {
        if (card > r / 2 + (r % 2)) break;
        bool again = true;
        while (again) {
            again = false;
            std::vector<int> idx;
            for (int i = 0; i < r; ++i)
                if (alive[i]) idx.push_back(i);
            if (static_cast<int>(idx.size()) < card) break;
            std::vector<int> sel(card);
            // iterate subsets of idx of size card
            std::vector<int> pos(card);
            for (int i = 0; i < card; ++i) pos[i] = i;
            while (true) {
                MPoly prod{Int(1)};
                for (int i = 0; i < card; ++i) prod = m_mul(prod, lifted[idx[pos[i]]], M);
                IPoly cand = to_symmetric(prod);
                IPoly quot;
                if (i_maxabs(cand) <= bound && i_divides_monic(rem, cand, &quot)) {
                    out.push_back(cand);
                    rem = quot;
                    for (int i = 0; i < card; ++i) alive[idx[pos[i]]] = 0;
                    again = true;
                    break;
                }
                // next subset
                int i = card - 1;
                while (i >= 0 && pos[i] == static_cast<int>(idx.size()) - card + i) --i;
                if (i < 0) break;
                ++pos[i];
                for (int j = i + 1; j < card; ++j) pos[j] = pos[j - 1] + 1;
            }
            if (static_cast<int>(rem.size()) - 1 == 0) break;
        }
    }
    if (static_cast<int>(rem.size()) - 1 > 0) out.push_back(rem);
    std::sort(out.begin(), out.end());
    return out;
}

QPoly ipoly_to_q(const IPoly& a) {
    std::vector<Rat> c;
    for (auto& v : a) c.emplace_back(v);
    return QPoly(std::move(c));
}

} // namespace

std::vector<QPoly> factor_q_squarefree_monic(const QPoly& f) {
    if (f.degree() <= 0) return {};
    if (f.degree() == 1) return {f};
    // clear denominators: substitute x -> x/d with d = lcm of denominators of
    // coefficients, then monicize by construction (f monic already)
    Int d(1);
    for (auto& v : f.c) d = int_lcm(d, rat_den(v));
    // g(x) = d^n f(x/d), monic with integer coefficients
    int n = f.degree();
    IPoly g(n + 1);
    Int dp(1);
    for (int i = n; i >= 0; --i) {
        Rat c = f.c[i] * Rat(dp);
        if (rat_den(c) != 1) fail("factor.internal", "denominator clearing failed");
        g[i] = rat_num(c);
        dp *= d;
    }
    auto zf = factor_z_monic_squarefree(g);
    std::vector<QPoly> out;
    for (auto& h : zf) {
        // map back: x -> d*x, then monicize
        int m = static_cast<int>(h.size()) - 1;
        std::vector<Rat> c(m + 1);
        Int dk(1);
        for (int i = 0; i <= m; ++i) {
            c[i] = Rat(h[i]) * Rat(dk);
            dk *= d;
        }
        out.push_back(QPoly(std::move(c)).monic());
    }
    std::sort(out.begin(), out.end(), [](const QPoly& a, const QPoly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.c < b.c;
    });
    return out;
}

QFactorization factor_q(const QPoly& f) {
    if (f.zero()) fail("poly.zero-input", "factorization of 0");
    QFactorization out;
    out.lead = f.lc();
    if (f.degree() == 0) return out;
    for (auto& [part, mult] : squarefree_decompose_field(f)) {
        for (auto& irr : factor_q_squarefree_monic(part))
            out.factors.push_back({irr, mult});
    }
    return out;
}

} // namespace germ
