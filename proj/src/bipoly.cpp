#include "germ/bipoly.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <cstdint>
#include <atomic>
#include <sstream>

namespace germ {

namespace {
std::atomic<int> g_degree_cap{64};
}

int bipoly_degree_cap() { return g_degree_cap.load(); }
void set_bipoly_degree_cap(int cap) { g_degree_cap.store(cap); }

BiPoly BiPoly::term(Scalar c, int ex, int ey) {
    BiPoly p;
    if (!c.is_zero()) p.t_[{ex, ey}] = std::move(c);
    return p;
}

Scalar BiPoly::coeff(int ex, int ey) const {
    auto it = t_.find({ex, ey});
    return it == t_.end() ? Scalar() : it->second;
}

void BiPoly::set(int ex, int ey, Scalar c) {
    if (c.is_zero()) t_.erase({ex, ey});
    else t_[{ex, ey}] = std::move(c);
}

int BiPoly::deg_x() const {
    int d = -1;
    for (auto& [k, v] : t_) d = std::max(d, k.first);
    return d;
}

int BiPoly::deg_y() const {
    int d = -1;
    for (auto& [k, v] : t_) d = std::max(d, k.second);
    return d;
}

int BiPoly::total_degree() const {
    int d = -1;
    for (auto& [k, v] : t_) d = std::max(d, k.first + k.second);
    return d;
}

int BiPoly::order() const {
    if (t_.empty()) return -1;
    int d = INT32_MAX;
    for (auto& [k, v] : t_) d = std::min(d, k.first + k.second);
    return d;
}

BiPoly BiPoly::operator-() const {
    BiPoly r;
    for (auto& [k, v] : t_) r.t_[k] = -v;
    return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (auto& [k, v] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = v;
        } else {
            it->second += v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (auto& [k, v] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end()) {
            t_[k] = -v;
        } else {
            it->second -= v;
            if (it->second.is_zero()) t_.erase(it);
        }
    }
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.zero() || b.zero()) return BiPoly();
    int cap = bipoly_degree_cap();
    if (a.total_degree() + b.total_degree() > cap)
        fail("poly.degree-cap",
             "product exceeds the configured total-degree cap " + std::to_string(cap));
    BiPoly r;
    for (auto& [ka, va] : a.t_)
        for (auto& [kb, vb] : b.t_) {
            BiPoly::Key k{ka.first + kb.first, ka.second + kb.second};
            auto it = r.t_.find(k);
            if (it == r.t_.end()) {
                Scalar p = va * vb;
                if (!p.is_zero()) r.t_[k] = std::move(p);
            } else {
                it->second += va * vb;
                if (it->second.is_zero()) r.t_.erase(it);
            }
        }
    return r;
}

BiPoly BiPoly::scaled(const Scalar& s) const {
    BiPoly r;
    if (s.is_zero()) return r;
    for (auto& [k, v] : t_) r.t_[k] = v * s;
    return r;
}

BiPoly BiPoly::pow(unsigned n) const {
    BiPoly r = BiPoly::constant(Scalar(1));
    BiPoly b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

BiPoly BiPoly::deriv_x() const {
    BiPoly r;
    for (auto& [k, v] : t_)
        if (k.first > 0) r.t_[{k.first - 1, k.second}] = v * Scalar(k.first);
    return r;
}

BiPoly BiPoly::deriv_y() const {
    BiPoly r;
    for (auto& [k, v] : t_)
        if (k.second > 0) r.t_[{k.first, k.second - 1}] = v * Scalar(k.second);
    return r;
}

BiPoly BiPoly::shear(const Scalar& c) const {
    if (c.is_zero()) return *this;
    // y -> y + c x, expand (y + c x)^ey by binomials
    BiPoly r;
    for (auto& [k, v] : t_) {
        // v * x^ex * (y + c x)^ey
        Scalar binom(1);
        // term j: C(ey,j) c^j x^(ex+j) y^(ey-j)
        Scalar cj(1);
        for (int j = 0; j <= k.second; ++j) {
            r += BiPoly::term(v * binom * cj, k.first + j, k.second - j);
            binom *= Scalar(k.second - j);
            binom = binom / Scalar(j + 1);
            cj *= c;
        }
    }
    return r;
}

Scalar BiPoly::eval(const Scalar& x, const Scalar& y) const {
    Scalar r;
    for (auto& [k, v] : t_)
        r += v * pow_ring(x, k.first) * pow_ring(y, k.second);
    return r;
}

UniPoly<Scalar> BiPoly::lowest_form_at_1t() const {
    int o = order();
    std::vector<Scalar> c(o >= 0 ? o + 1 : 0, Scalar());
    for (auto& [k, v] : t_)
        if (k.first + k.second == o) c[k.second] = v;
    return UniPoly<Scalar>(std::move(c));
}

XYPoly BiPoly::as_poly_in_x() const {
    int dx = deg_x();
    std::vector<YPoly> cs(dx + 1);
    for (auto& [k, v] : t_) {
        auto& yc = cs[k.first].c;
        if (static_cast<int>(yc.size()) <= k.second) yc.resize(k.second + 1, Scalar());
        yc[k.second] = v;
    }
    for (auto& p : cs) p.normalize();
    return XYPoly(std::move(cs));
}

BiPoly BiPoly::from_poly_in_x(const XYPoly& p) {
    BiPoly r;
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < p.c[i].c.size(); ++j)
            if (!p.c[i].c[j].is_zero()) r.t_[{(int)i, (int)j}] = p.c[i].c[j];
    return r;
}

YPoly BiPoly::as_poly_in_y() const {
    if (deg_x() > 0) fail("poly.shape", "polynomial still depends on x");
    std::vector<Scalar> c(deg_y() + 1, Scalar());
    for (auto& [k, v] : t_) c[k.second] = v;
    return YPoly(std::move(c));
}

BiPoly BiPoly::unit_normal() const {
    if (zero()) return *this;
    const Scalar& lead = t_.rbegin()->second;
    return scaled(inv(lead));
}

std::string BiPoly::str() const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [k, v] = *it;
        if (!first) os << " + ";
        first = false;
        bool has_var = k.first > 0 || k.second > 0;
        if (!has_var || !(v.is_one())) {
            bool needs_paren = v.im != 0 && v.re != 0;
            if (needs_paren) os << "(" << v << ")";
            else os << v;
            if (has_var) os << "*";
        }
        if (k.first > 0) {
            os << "x";
            if (k.first > 1) os << "^" << k.first;
            if (k.second > 0) os << "*";
        }
        if (k.second > 0) {
            os << "y";
            if (k.second > 1) os << "^" << k.second;
        }
    }
    return os.str();
}

// ---- gcd / squarefree ----

namespace {

// content of p in Q(i)[y] (monic gcd of the x-coefficients)
YPoly content_y(const XYPoly& p) {
    YPoly g;
    for (auto& cy : p.c) {
        if (cy.zero()) continue;
        g = gcd_field(g, cy);
        if (g.degree() == 0) break;
    }
    return g;
}

XYPoly primitive_part(const XYPoly& p, const YPoly& cont) {
    XYPoly r = p;
    for (auto& cy : r.c)
        if (!cy.zero()) cy = cy / cont; // exact by construction
    return r;
}

// scale to Gaussian-integer coefficients and strip the common Z[i] factor;
// without this the pseudo-remainder chain blows up numerically even when the
// polynomial content stays trivial
void strip_numeric_content(XYPoly& p) {
    Int l(1);
    for (auto& cy : p.c)
        for (auto& s : cy.c) {
            l = int_lcm(l, rat_den(s.re));
            l = int_lcm(l, rat_den(s.im));
        }
    if (l != 1) {
        Rat lr(l);
        for (auto& cy : p.c)
            for (auto& s : cy.c) { s.re *= lr; s.im *= lr; }
    }
    Int gr(0), gi(0);
    for (auto& cy : p.c)
        for (auto& s : cy.c) {
            if (s.is_zero()) continue;
            std::tie(gr, gi) = detail::gauss_gcd(std::move(gr), std::move(gi),
                                                 rat_num(s.re), rat_num(s.im));
            if (gr * gr + gi * gi == 1) return;
        }
    if (gr * gr + gi * gi > 1) {
        Scalar g{Rat(gr), Rat(gi)};
        for (auto& cy : p.c)
            for (auto& s : cy.c) s = s / g;
    }
}

} // namespace

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b) {
    if (a.zero()) return b.unit_normal();
    if (b.zero()) return a.unit_normal();
    XYPoly pa = a.as_poly_in_x(), pb = b.as_poly_in_x();
    YPoly ca = content_y(pa), cb = content_y(pb);
    YPoly cg = gcd_field(ca, cb);
    XYPoly u = primitive_part(pa, ca), v = primitive_part(pb, cb);
    strip_numeric_content(u);
    strip_numeric_content(v);
    if (u.degree() < v.degree()) std::swap(u, v);
    // primitive PRS in x (with subresultant-free content removal each step)
    while (v.degree() > 0) {
        XYPoly r = prem(u, v);
        if (r.zero()) {
            u = v;
            v = XYPoly();
            break;
        }
        YPoly cr = content_y(r);
        u = v;
        v = primitive_part(r, cr);
        strip_numeric_content(v);
        if (u.degree() < v.degree()) std::swap(u, v);
    }
    BiPoly g;
    if (v.zero())
        g = BiPoly::from_poly_in_x(u); // primitive gcd
    else
        g = BiPoly::constant(Scalar(1)); // x-parts coprime
    g = g * BiPoly::from_poly_in_x(XYPoly({cg}));
    return g.unit_normal();
}

SquarefreeDecomposition squarefree_decompose(const BiPoly& f) {
    if (f.zero()) fail("poly.zero-input", "squarefree decomposition of 0");
    // G_0 = f, G_{i+1} = gcd(G_i, dG_i/dx, dG_i/dy); the radical chain
    // R_i = G_i / G_{i+1} satisfies: factors of multiplicity exactly i are
    // R_{i-1} / R_i.
    std::vector<BiPoly> R;
    BiPoly g = f.unit_normal();
    while (g.total_degree() > 0) {
        BiPoly h = bipoly_gcd(bipoly_gcd(g, g.deriv_x()), g.deriv_y());
        BiPoly rad;
        {
            XYPoly gx = g.as_poly_in_x(), hx = h.as_poly_in_x();
            if (hx.degree() == 0 && hx.c[0].degree() == 0) {
                rad = g.scaled(inv(hx.c[0].c[0]));
            } else {
                rad = BiPoly::from_poly_in_x(exact_div(gx, hx));
            }
        }
        R.push_back(rad.unit_normal());
        g = h;
    }
    SquarefreeDecomposition out;
    for (size_t i = 0; i + 1 <= R.size(); ++i) {
        BiPoly part;
        if (i + 1 < R.size()) {
            XYPoly num = R[i].as_poly_in_x(), den = R[i + 1].as_poly_in_x();
            part = BiPoly::from_poly_in_x(exact_div(num, den));
        } else {
            part = R[i];
        }
        part = part.unit_normal();
        if (part.total_degree() > 0)
            out.parts.push_back({part, static_cast<int>(i) + 1});
    }
    return out;
}

std::vector<NewtonPolygonEdge> newton_polygon(const BiPoly& f) {
    if (f.zero()) fail("poly.zero-input", "Newton polygon of 0");
    // support projected to (x-exp, least y-exp)
    std::vector<std::pair<int, int>> pts;
    for (auto& [k, v] : f.terms()) {
        if (!pts.empty() && pts.back().first == k.first) continue; // map order: y ascending
        pts.push_back(k);
    }
    // lower hull, monotone chain over x
    std::vector<std::pair<int, int>> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            long cross = (long)(b.first - a.first) * (p.second - a.second) -
                         (long)(b.second - a.second) * (p.first - a.first);
            if (cross <= 0) hull.pop_back();
            else break;
        }
        hull.push_back(p);
    }
    std::vector<NewtonPolygonEdge> edges;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        auto [ia, oa] = hull[k];
        auto [ib, ob] = hull[k + 1];
        if (oa <= ob) break; // slope no longer positive
        NewtonPolygonEdge e;
        e.from = {ib, ob};
        e.to = {ia, oa};
        e.slope_exponent = Rat(oa - ob) / Rat(ib - ia);
        std::vector<Scalar> c(ib - ia + 1, Scalar());
        for (int i = ia; i <= ib; ++i) {
            // y-order on the edge line at x-exponent i, when integral
            long num = (long)oa * (ib - ia) + (long)(ob - oa) * (i - ia);
            if (num % (ib - ia)) continue;
            c[i - ia] = f.coeff(i, (int)(num / (ib - ia)));
        }
        e.edge_poly = YPoly(std::move(c));
        edges.push_back(std::move(e));
    }
    return edges;
}

YPoly resultant_x(const BiPoly& p, const BiPoly& q) {
    if (p.zero() || q.zero()) fail("poly.zero-input", "resultant of zero polynomial");
    if (p.deg_x() == 0 && q.deg_x() == 0)
        fail("poly.degenerate", "both arguments have x-degree 0");
    return resultant(p.as_poly_in_x(), q.as_poly_in_x());
}

YPoly discriminant_x(const BiPoly& f) {
    YPoly r = resultant_x(f, f.deriv_x());
    return r;
}

std::optional<int> order_at_zero(const YPoly& p) {
    int o = p.order();
    if (o < 0) return std::nullopt;
    return o;
}

const std::vector<Scalar>& shear_sequence() {
    static const std::vector<Scalar> seq = [] {
        std::vector<Scalar> s;
        s.push_back(Scalar(0));
        for (long n = 1; n <= 16; ++n) {
            s.push_back(Scalar(n));
            s.push_back(Scalar(-n));
        }
        const Scalar I = Scalar::i();
        s.push_back(I);
        s.push_back(-I);
        for (long n = 1; n <= 16; ++n) {
            s.push_back(Scalar(n) + I);
            s.push_back(Scalar(-n) - I);
            s.push_back(Scalar(n) - I);
            s.push_back(Scalar(-n) + I);
        }
        return s;
    }();
    return seq;
}

std::pair<BiPoly, Scalar> ensure_transverse(const BiPoly& f) {
    if (f.zero() || f.order() < 1)
        fail("input.not-a-germ", "germ must vanish at the origin");
    UniPoly<Scalar> L = f.lowest_form_at_1t(); // L(1, t)
    for (const Scalar& c : shear_sequence()) {
        if (!L.eval(c).is_zero()) return {f.shear(c), c};
    }
    fail("poly.no-shear", "no admissible shear in the fixed search sequence");
}

} // namespace germ
