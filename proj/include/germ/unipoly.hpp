#ifndef GERM_UNIPOLY_HPP
#define GERM_UNIPOLY_HPP

#include "germ/error.hpp"
#include "germ/rational.hpp"
#include "germ/scalar.hpp"

#include <utility>
#include <vector>

namespace germ {

inline bool is_zero(const Rat& r) { return r == 0; }
inline Rat inv(const Rat& r) {
    if (r == 0) fail("math.div-zero", "division by zero rational");
    return 1 / r;
}
inline Rat exact_div(const Rat& a, const Rat& b) { return a * inv(b); }
inline Scalar exact_div(const Scalar& a, const Scalar& b) { return a / b; }

template <class C>
C pow_ring(C b, int n) {
    C r(1);
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

/// Dense univariate polynomial, coefficients lowest-degree first.
/// C must be a commutative ring with is_zero(); field-only methods
/// (divrem, gcd) additionally need inv().
template <class C>
class UniPoly {
public:
    std::vector<C> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<C> cs) : c(std::move(cs)) { normalize(); }
    UniPoly(long n) { // constant, so UniPoly can itself be a ring coefficient
        C v(n);
        if (!is_zero(v)) c.push_back(std::move(v));
    }

    static UniPoly constant(C v) {
        UniPoly p;
        if (!is_zero(v)) p.c.push_back(std::move(v));
        return p;
    }
    static UniPoly monomial(C v, int deg) {
        UniPoly p;
        if (is_zero(v)) return p;
        p.c.assign(deg + 1, C());
        p.c[deg] = std::move(v);
        return p;
    }
    static UniPoly x() { return monomial(C(1), 1); }

    void normalize() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    bool zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; } // -1 for 0
    const C& lc() const { return c.back(); }
    C coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return C();
        return c[i];
    }

    // least i with nonzero coefficient; -1 for the zero polynomial
    int order() const {
        for (int i = 0; i < static_cast<int>(c.size()); ++i)
            if (!is_zero(c[i])) return i;
        return -1;
    }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& v : r.c) v = C() - v;
        return r;
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), C());
        for (size_t i = 0; i < o.c.size(); ++i) c[i] = c[i] + o.c[i];
        normalize();
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.c.size() > c.size()) c.resize(o.c.size(), C());
        for (size_t i = 0; i < o.c.size(); ++i) c[i] = c[i] - o.c[i];
        normalize();
        return *this;
    }

    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.zero() || b.zero()) return UniPoly();
        std::vector<C> r(a.c.size() + b.c.size() - 1, C());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (is_zero(a.c[i])) continue;
            for (size_t j = 0; j < b.c.size(); ++j)
                r[i + j] = r[i + j] + a.c[i] * b.c[j];
        }
        return UniPoly(std::move(r));
    }

    UniPoly scaled(const C& s) const {
        if (is_zero(s)) return UniPoly();
        UniPoly r = *this;
        for (auto& v : r.c) v = v * s;
        r.normalize();
        return r;
    }

    UniPoly shifted(int k) const { // multiply by x^k
        if (zero()) return UniPoly();
        UniPoly r;
        r.c.assign(c.size() + k, C());
        for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c == b.c; }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a.c == b.c); }

    UniPoly derivative() const {
        UniPoly r;
        for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * C(static_cast<long>(i)));
        r.normalize();
        return r;
    }

    template <class V>
    V eval(const V& x) const {
        V r = V();
        for (size_t i = c.size(); i-- > 0;) r = r * x + V(c[i]);
        return r;
    }

    // p(x) -> p(q(x))
    UniPoly compose(const UniPoly& q) const {
        UniPoly r;
        for (size_t i = c.size(); i-- > 0;) r = r * q + constant(c[i]);
        return r;
    }

    UniPoly pow(unsigned n) const {
        UniPoly r = constant(C(1)), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    // ---- field-coefficient operations ----

    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const {
        if (d.zero()) fail("math.div-zero", "polynomial division by zero");
        UniPoly q, r = *this;
        C lcinv = inv(d.lc());
        int dd = d.degree();
        if (r.degree() >= dd) q.c.assign(r.degree() - dd + 1, C());
        while (r.degree() >= dd) {
            int k = r.degree() - dd;
            C f = r.lc() * lcinv;
            q.c[k] = f;
            for (int i = 0; i <= dd; ++i) r.c[k + i] = r.c[k + i] - f * d.c[i];
            r.c.pop_back();
            r.normalize();
        }
        q.normalize();
        return {q, r};
    }

    UniPoly operator/(const UniPoly& d) const { return divrem(d).first; }
    UniPoly operator%(const UniPoly& d) const { return divrem(d).second; }

    UniPoly monic() const {
        if (zero()) return *this;
        return scaled(inv(lc()));
    }
};

template <class C>
bool is_zero(const UniPoly<C>& p) { return p.zero(); }

template <class C>
UniPoly<C> gcd_field(UniPoly<C> a, UniPoly<C> b) {
    // monic PRS: renormalizing each remainder keeps the coefficient growth
    // polynomial instead of the explosive growth of the raw Euclidean chain
    while (!b.zero()) {
        UniPoly<C> r = a % b.monic();
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// g = gcd, and s with s*a = g (mod m).  Used for inversion in quotient rings.
template <class C>
void half_ext_gcd(UniPoly<C> a, UniPoly<C> m, UniPoly<C>& g, UniPoly<C>& s) {
    UniPoly<C> r0 = std::move(a), r1 = std::move(m);
    UniPoly<C> s0 = UniPoly<C>::constant(C(1)), s1;
    while (!r1.zero()) {
        auto [q, r] = r0.divrem(r1);
        UniPoly<C> s2 = s0 - q * s1;
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    C u = inv(r0.lc());
    g = r0.scaled(u);
    s = s0.scaled(u);
}

// Ring-exact division: asserts the division leaves no remainder.
template <class C>
UniPoly<C> exact_div(const UniPoly<C>& a, const UniPoly<C>& b) {
    if (b.zero()) fail("math.div-zero", "polynomial division by zero");
    if (a.zero()) return a;
    UniPoly<C> q, r = a;
    int dd = b.degree();
    if (r.degree() < dd) fail("math.exact-div", "inexact polynomial division");
    q.c.assign(r.degree() - dd + 1, C());
    while (r.degree() >= dd) {
        int k = r.degree() - dd;
        C f = exact_div(r.lc(), b.lc());
        q.c[k] = f;
        for (int i = 0; i <= dd; ++i) r.c[k + i] = r.c[k + i] - f * b.c[i];
        r.c.pop_back();
        r.normalize();
    }
    if (!r.zero()) fail("math.exact-div", "inexact polynomial division");
    q.normalize();
    return q;
}

// lc(b)^(deg a - deg b + 1) * a  mod b, computed without coefficient division.
template <class C>
UniPoly<C> prem(UniPoly<C> a, const UniPoly<C>& b) {
    int da = a.degree(), db = b.degree();
    if (db < 0) fail("math.div-zero", "pseudo-division by zero");
    if (da < db) fail("math.exact-div", "prem expects deg a >= deg b");
    int e = da - db + 1;
    while (!a.zero() && a.degree() >= db) {
        int k = a.degree() - db;
        C la = a.lc();
        a = a.scaled(b.lc());
        UniPoly<C> t = b.scaled(la).shifted(k);
        a -= t;
        --e;
    }
    if (e > 0) a = a.scaled(pow_ring(b.lc(), e));
    return a;
}

namespace detail {

inline Int floor_div(const Int& a, const Int& b) { // b > 0
    Int q = a / b;
    if (q * b != a && a < 0) --q;
    return q;
}
inline Int round_near(const Int& n, const Int& d) { // nearest integer to n/d, d > 0
    return floor_div(2 * n + d, 2 * d);
}

// gcd in Z[i] by Euclid with nearest-rounding quotients
inline std::pair<Int, Int> gauss_gcd(Int ar, Int ai, Int br, Int bi) {
    while (br != 0 || bi != 0) {
        Int nb = br * br + bi * bi;
        Int tr = ar * br + ai * bi, ti = ai * br - ar * bi;
        Int qr = round_near(tr, nb), qi = round_near(ti, nb);
        Int rr = ar - (qr * br - qi * bi), ri = ai - (qr * bi + qi * br);
        ar = std::move(br); ai = std::move(bi);
        br = std::move(rr); bi = std::move(ri);
    }
    return {std::move(ar), std::move(ai)};
}

// scale to Gaussian-integer coefficients and strip the Z[i] content
inline void make_primitive_qi(UniPoly<Scalar>& p) {
    Int l(1);
    for (auto& c : p.c) {
        l = int_lcm(l, rat_den(c.re));
        l = int_lcm(l, rat_den(c.im));
    }
    if (l != 1) {
        Rat lr(l);
        for (auto& c : p.c) { c.re *= lr; c.im *= lr; }
    }
    Int gr(0), gi(0);
    for (auto& c : p.c) {
        if (c.is_zero()) continue;
        std::tie(gr, gi) = gauss_gcd(std::move(gr), std::move(gi),
                                     rat_num(c.re), rat_num(c.im));
        if (gr * gr + gi * gi == 1) return;
    }
    if (gr * gr + gi * gi > 1) {
        Scalar g{Rat(gr), Rat(gi)};
        for (auto& c : p.c) c = c / g;
    }
}

} // namespace detail

// Over Q(i) the generic monic PRS still suffers rational coefficient growth;
// a primitive PRS over Z[i] keeps every intermediate small.
template <>
inline UniPoly<Scalar> gcd_field<Scalar>(UniPoly<Scalar> a, UniPoly<Scalar> b) {
    if (a.zero()) return b.monic();
    if (b.zero()) return a.monic();
    detail::make_primitive_qi(a);
    detail::make_primitive_qi(b);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (b.degree() > 0) {
        UniPoly<Scalar> r = prem(a, b);
        a = std::move(b);
        if (r.zero()) return a.monic();
        detail::make_primitive_qi(r);
        b = std::move(r);
    }
    return UniPoly<Scalar>::constant(Scalar(1)); // remaining constant: coprime
}

/// Resultant via the subresultant PRS (Cohen, Alg. 3.3.7).  Works over any
/// integral domain C with exact_div.
template <class C>
C resultant(UniPoly<C> a, UniPoly<C> b) {
    if (a.zero() || b.zero()) return C(0) * C(0); // zero of C
    bool neg = false;
    if (a.degree() < b.degree()) {
        if ((a.degree() & 1) && (b.degree() & 1)) neg = !neg;
        std::swap(a, b);
    }
    if (b.degree() == 0) {
        C r = pow_ring(b.lc(), a.degree());
        return neg ? C(0) - r : r;
    }
    C g(1), h(1);
    int s = neg ? -1 : 1;
    while (true) {
        int da = a.degree(), db = b.degree();
        int delta = da - db;
        if ((da & 1) && (db & 1)) s = -s;
        UniPoly<C> r = prem(a, b);
        a = std::move(b);
        C divisor = g * pow_ring(h, delta);
        b = UniPoly<C>();
        if (!r.zero()) {
            b = r;
            for (auto& v : b.c) v = exact_div(v, divisor);
        }
        g = a.lc();
        if (delta >= 1) {
            // h = h^{1-delta} g^delta
            C gn = pow_ring(g, delta);
            h = (delta == 1) ? gn : exact_div(gn, pow_ring(h, delta - 1));
        }
        if (b.zero()) return C(0) * C(0); // common factor of positive degree
        if (b.degree() == 0) {
            int dA = a.degree();
            C num = pow_ring(b.lc(), dA);
            C res = (dA == 1) ? num : exact_div(num, pow_ring(h, dA - 1));
            return s < 0 ? C(0) - res : res;
        }
    }
}

} // namespace germ

#endif
