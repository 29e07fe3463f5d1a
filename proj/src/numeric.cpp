#include "germ/numeric.hpp"

#include "germ/error.hpp"
#include "germ/zfactor.hpp"

#include <algorithm>
#include <cmath>

namespace germ {

namespace {

long g_bits = 128;

// raised internally when the working precision cannot resolve a decision;
// callers retry on a doubling ladder
struct NeedMorePrec {};

MPF eps_at_current() {
    return boost::multiprecision::ldexp(MPF(1), static_cast<int>(-(g_bits - 6)));
}

Rat mpf_to_rat(const MPF& x) { return x.convert_to<Rat>(); }

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// upper bound on |a + bi| and a lower bound usable for root bounds
Rat scalar_abs_upper(const Scalar& s) { return rat_abs(s.re) + rat_abs(s.im); }
Rat scalar_abs_lower(const Scalar& s) {
    return std::max(rat_abs(s.re), rat_abs(s.im));
}

} // namespace

void set_prec_bits(long bits) {
    g_bits = bits;
    unsigned digits = static_cast<unsigned>(bits * 0.30103) + 4;
    MPF::default_precision(digits);
}

MPF cnum_abs(const CNum& a) {
    return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im);
}

MPF Ball::abs_lower() const {
    MPF d = cnum_abs(c) - r;
    return d > 0 ? d : MPF(0);
}

namespace {

// MPF(Rat) routes through a pathologically slow boost conversion; going
// through the integer parts is orders of magnitude faster
MPF mpf_from_rat(const Rat& q) {
    MPF n(numerator(q));
    if (denominator(q) == 1) return n;
    return n / MPF(denominator(q));
}

} // namespace

Ball ball_exact(const Scalar& s) {
    CNum c(mpf_from_rat(s.re), mpf_from_rat(s.im));
    MPF slop = (cnum_abs(c) + 1) * eps_at_current();
    return Ball(std::move(c), slop);
}

Ball ball_add(const Ball& a, const Ball& b) {
    CNum c = a.c + b.c;
    MPF r = a.r + b.r + (cnum_abs(c) + 1) * eps_at_current();
    return Ball(std::move(c), std::move(r));
}

Ball ball_sub(const Ball& a, const Ball& b) {
    CNum c = a.c - b.c;
    MPF r = a.r + b.r + (cnum_abs(c) + 1) * eps_at_current();
    return Ball(std::move(c), std::move(r));
}

Ball ball_mul(const Ball& a, const Ball& b) {
    CNum c = a.c * b.c;
    MPF r = cnum_abs(a.c) * b.r + cnum_abs(b.c) * a.r + a.r * b.r +
            (cnum_abs(c) + 1) * eps_at_current();
    return Ball(std::move(c), std::move(r));
}

Ball ball_div(const Ball& a, const Ball& b) {
    if (!b.excludes_zero()) fail("math.div-zero", "ball division by zero");
    CNum c = a.c / b.c;
    // |a/b - c| <= (|a| rb + |b| ra) / (|b| (|b| - rb)) roughly; be generous
    MPF bl = b.abs_lower();
    MPF r = (a.abs_upper() * b.r + b.abs_upper() * a.r) / (bl * bl) +
            (cnum_abs(c) + 1) * eps_at_current();
    return Ball(std::move(c), std::move(r));
}

// ---------------- certified complex roots ----------------

namespace {

Ball horner(const std::vector<Ball>& coeffs, const CNum& z) {
    Ball acc;
    Ball bz(z, MPF(0));
    for (size_t i = coeffs.size(); i-- > 0;)
        acc = ball_add(ball_mul(acc, bz), coeffs[i]);
    return acc;
}

} // namespace

std::optional<std::vector<RootDisk>> certified_roots(const std::vector<Ball>& coeffs0) {
    std::vector<Ball> coeffs = coeffs0;
    while (!coeffs.empty() && !coeffs.back().excludes_zero()) {
        // a leading coefficient that might be zero leaves the degree unknown
        if (coeffs.back().abs_upper() > eps_at_current() * 1000) return std::nullopt;
        coeffs.pop_back();
    }
    if (coeffs.size() <= 1) return std::vector<RootDisk>{};
    int n = static_cast<int>(coeffs.size()) - 1;

    std::vector<CNum> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) c[i] = coeffs[i].c;
    // root radius bound
    MPF lead = cnum_abs(c[n]);
    MPF bound(1);
    for (int i = 0; i < n; ++i) {
        MPF t = 1 + cnum_abs(c[i]) / lead;
        if (t > bound) bound = t;
    }

    // Durand-Kerner from a spiral of start points
    std::vector<CNum> z(n);
    CNum seed(MPF("0.4"), MPF("0.9"));
    CNum cur(MPF(1), MPF(0));
    for (int j = 0; j < n; ++j) {
        cur = cur * seed;
        z[j] = CNum(cur.re * bound, cur.im * bound);
    }
    MPF tol = boost::multiprecision::ldexp(MPF(1), static_cast<int>(-(g_bits - 10)));
    for (int iter = 0; iter < 60 + 30 * n; ++iter) {
        MPF worst(0);
        for (int j = 0; j < n; ++j) {
            // f(z_j) / (lc * prod_{k != j} (z_j - z_k))
            CNum num;
            for (size_t i = coeffs.size(); i-- > 0;) num = num * z[j] + c[i];
            CNum den = c[n];
            for (int k = 0; k < n; ++k)
                if (k != j) den = den * (z[j] - z[k]);
            MPF dm = cnum_abs(den);
            if (dm == 0) {
                z[j].re += MPF("0.123") * (j + 1);
                z[j].im += MPF("0.456");
                worst = bound;
                continue;
            }
            CNum w = num / den;
            z[j] = z[j] - w;
            MPF aw = cnum_abs(w);
            if (aw > worst) worst = aw;
        }
        if (worst < tol * (bound + 1)) break;
    }

    // certification: a disk of radius n |f(z)/f'(z)| contains a root
    std::vector<Ball> dcoeffs;
    for (int i = 1; i <= n; ++i)
        dcoeffs.push_back(ball_mul(coeffs[i], ball_exact(Scalar(i))));
    std::vector<RootDisk> out(n);
    for (int j = 0; j < n; ++j) {
        Ball fz = horner(coeffs, z[j]);
        Ball dfz = horner(dcoeffs, z[j]);
        if (!dfz.excludes_zero()) return std::nullopt;
        MPF rad = MPF(n) * fz.abs_upper() / dfz.abs_lower();
        out[j] = RootDisk{z[j], rad};
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (cnum_abs(out[i].z - out[j].z) <= out[i].r + out[j].r)
                return std::nullopt;
    return out;
}

// ---------------- Sturm machinery ----------------

int sign_at(const QPoly& f, const Rat& x) {
    Rat v = f.eval(x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

std::vector<QPoly> sturm_chain(const QPoly& f) {
    std::vector<QPoly> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().zero() && chain.back().degree() > 0) {
        QPoly r = chain[chain.size() - 2] % chain.back();
        if (r.zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace {

int sturm_variations(const std::vector<QPoly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

} // namespace

int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b) {
    return sturm_variations(chain, a) - sturm_variations(chain, b);
}

std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f) {
    std::vector<std::pair<Rat, Rat>> out;
    if (f.degree() <= 0) return out;
    auto chain = sturm_chain(f);
    Rat bound(1);
    for (int i = 0; i < f.degree(); ++i) {
        Rat t = 1 + rat_abs(f.c[i]) / rat_abs(f.lc());
        if (t > bound) bound = t;
    }
    // invariant: segment endpoints are never roots
    struct Seg { Rat a, b; int count; };
    std::vector<Seg> work;
    int total = sturm_count(chain, -bound, bound);
    if (total > 0) work.push_back({-bound, bound, total});
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.count == 1) {
            out.push_back({s.a, s.b});
            continue;
        }
        Rat m = (s.a + s.b) / 2;
        if (sign_at(f, m) == 0) {
            // exact rational root at m: shrink a guard interval around it
            Rat w = (s.b - s.a) / 4;
            while (sign_at(f, m - w) == 0 || sign_at(f, m + w) == 0 ||
                   sturm_count(chain, m - w, m + w) != 1)
                w /= 2;
            out.push_back({m - w, m + w});
            int left = sturm_count(chain, s.a, m - w);
            int right = sturm_count(chain, m + w, s.b);
            if (left > 0) work.push_back({s.a, m - w, left});
            if (right > 0) work.push_back({m + w, s.b, right});
        } else {
            int left = sturm_count(chain, s.a, m);
            if (left > 0) work.push_back({s.a, m, left});
            if (s.count - left > 0) work.push_back({m, s.b, s.count - left});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------- annihilators for exact tie-breaking ----------------

namespace {

QPoly q_squarefree(const QPoly& f) {
    if (f.degree() <= 0) return f.monic();
    return (f / gcd_field(f, f.derivative())).monic();
}

QPoly rational_annihilator_from(const SPoly& n) {
    SPoly conj = n;
    for (auto& v : conj.c) v = v.conj();
    SPoly prod = n * conj;
    std::vector<Rat> c(prod.c.size());
    for (size_t i = 0; i < prod.c.size(); ++i) {
        if (prod.c[i].im != 0) fail("numeric.internal", "annihilator not rational");
        c[i] = prod.c[i].re;
    }
    return q_squarefree(QPoly(std::move(c)));
}

// S(u) = Res_z(Q(z), Q(2u - z)): vanishes at (z_i + z_j)/2 for all root
// pairs, in particular at every re(z_i) (roots of Q close under conjugation)
QPoly re_annihilator(const QPoly& q) {
    int n = q.degree();
    using C = QPoly; // polynomials in u
    UniPoly<C> A, B;
    for (int j = 0; j <= n; ++j)
        A.c.push_back(C::constant(q.c[j]));
    A.normalize();
    // Q(2u - z) = sum_m q_m (2u - z)^m
    B.c.assign(n + 1, C());
    for (int m = 0; m <= n; ++m) {
        if (q.c[m] == 0) continue;
        Int binom(1);
        for (int t = 0; t <= m; ++t) {
            // coefficient of z^t: q_m * C(m,t) * (-1)^t * (2u)^(m-t)
            Rat coef = q.c[m] * Rat(binom) * ((t % 2) ? Rat(-1) : Rat(1)) *
                       Rat(Int(1) << (m - t));
            B.c[t] += C::monomial(coef, m - t);
            binom = binom * (m - t) / (t + 1);
        }
    }
    B.normalize();
    return q_squarefree(resultant(A, B));
}

// T(v) = Res_z(Q(z), Q(z - 2iv)): vanishes at (z_i - z_j)/(2i), in
// particular at every im(z_i)
SPoly im_annihilator(const QPoly& q) {
    int n = q.degree();
    using C = SPoly; // polynomials in v over Q(i)
    UniPoly<C> A, B;
    for (int j = 0; j <= n; ++j)
        A.c.push_back(C::constant(Scalar(q.c[j])));
    A.normalize();
    B.c.assign(n + 1, C());
    Scalar m2i(Rat(0), Rat(-2)); // -2i
    for (int m = 0; m <= n; ++m) {
        if (q.c[m] == 0) continue;
        Int binom(1);
        for (int t = 0; t <= m; ++t) {
            // coefficient of z^t: q_m * C(m,t) * (-2i v)^(m-t)
            Scalar coef = Scalar(q.c[m] * Rat(binom)) * pow_ring(m2i, m - t);
            B.c[t] += C::monomial(coef, m - t);
            binom = binom * (m - t) / (t + 1);
        }
    }
    B.normalize();
    SPoly t = resultant(A, B);
    SPoly g = gcd_field(t, t.derivative());
    return (t / g).monic();
}

// strict lower bound on |nonzero roots|; also reports multiplicity of 0
template <class P, class AbsLo, class AbsUp>
Rat root_lower_bound(const P& p, int& zero_mult, AbsLo lo, AbsUp up) {
    zero_mult = 0;
    int i = 0;
    while (i <= p.degree() && is_zero(p.c[i])) ++i;
    zero_mult = i;
    Rat a0 = lo(p.c[i]);
    Rat mx(0);
    for (int j = i + 1; j <= p.degree(); ++j) {
        Rat t = up(p.c[j]);
        if (t > mx) mx = t;
    }
    if (mx == 0) return Rat(1);
    return a0 / (a0 + mx);
}

int interval_locate(const std::vector<std::pair<Rat, Rat>>& ivs, const Rat& lo,
                    const Rat& hi) {
    int found = -1;
    for (size_t i = 0; i < ivs.size(); ++i) {
        if (ivs[i].first < lo && hi < ivs[i].second) {
            found = static_cast<int>(i);
            break;
        }
    }
    if (found < 0) throw NeedMorePrec{};
    return found;
}

} // namespace

// ---------------- embedding ----------------

Ball Embedding::eval_elem(const TElem& e) const {
    if (e.level == 0) return ball_exact(e.base);
    Ball g(gens_[e.level - 1].z, gens_[e.level - 1].r);
    Ball acc;
    for (size_t i = e.up.size(); i-- > 0;)
        acc = ball_add(ball_mul(acc, g), eval_elem(e.up[i]));
    return acc;
}

void Embedding::ensure(long bits) {
    bits = std::max(bits, 64L);
    if (bits_ >= bits && static_cast<int>(gens_.size()) == tw_->levels()) return;
    long p = std::max(bits, bits_);
    set_prec_bits(p + 64);
    gens_.clear();
    bits_ = 0;
    for (int k = 1; k <= tw_->levels(); ++k) {
        const TPoly& m = tw_->minpoly(k);
        std::vector<Ball> cb;
        for (int i = 0; i <= m.degree(); ++i)
            cb.push_back(eval_elem(m.coeff(i).v));
        auto rd = certified_roots(cb);
        if (!rd || static_cast<int>(rd->size()) != m.degree()) throw NeedMorePrec{};
        // pick the (re, im)-lexicographically minimal root; resolve real-part
        // ties exactly through the rational annihilator of the roots
        std::vector<std::pair<Rat, Rat>> ivs;
        bool have_ivs = false;
        auto cmp = [&](const RootDisk& x, const RootDisk& y) {
            Rat xlo = mpf_to_rat(x.z.re - x.r), xhi = mpf_to_rat(x.z.re + x.r);
            Rat ylo = mpf_to_rat(y.z.re - y.r), yhi = mpf_to_rat(y.z.re + y.r);
            if (xhi < ylo) return -1;
            if (yhi < xlo) return 1;
            if (!have_ivs) {
                QPoly q = rational_annihilator_from(tw_->norm_qi(m));
                ivs = isolate_real_roots(re_annihilator(q));
                have_ivs = true;
            }
            int ix = interval_locate(ivs, xlo, xhi);
            int iy = interval_locate(ivs, ylo, yhi);
            if (ix != iy) return ix < iy ? -1 : 1;
            // equal real parts: the imaginary parts of distinct roots differ
            Rat xil = mpf_to_rat(x.z.im - x.r), xih = mpf_to_rat(x.z.im + x.r);
            Rat yil = mpf_to_rat(y.z.im - y.r), yih = mpf_to_rat(y.z.im + y.r);
            if (xih < yil) return -1;
            if (yih < xil) return 1;
            throw NeedMorePrec{};
        };
        int sel = 0;
        for (int j = 1; j < static_cast<int>(rd->size()); ++j)
            if (cmp((*rd)[j], (*rd)[sel]) < 0) sel = j;
        gens_.push_back((*rd)[sel]);
    }
    bits_ = p;
}

Ball Embedding::eval(const TF& a, long bits) {
    for (long p = std::max(bits, 64L);; p *= 2) {
        if (p > std::max(max_bits_, bits))
            fail("numeric.precision-cap",
                 "cannot certify value at precision cap");
        try {
            ensure(p);
            set_prec_bits(bits_ + 64);
            return eval_elem(a.v);
        } catch (NeedMorePrec&) {
            bits_ = 0; // force recompute at higher precision
        }
    }
}

std::complex<double> Embedding::approx(const TF& a) {
    Ball b = eval(a, 64);
    return {b.c.re.convert_to<double>(), b.c.im.convert_to<double>()};
}

QPoly Embedding::annihilator(const TF& a) {
    TPoly p(std::vector<TF>{-a, TF(1)});
    return rational_annihilator_from(tw_->norm_qi(p));
}

int Embedding::sign_re(const TF& a) {
    if (is_zero(a)) return 0;
    if (a.v.level == 0) {
        if (a.v.base.re > 0) return 1;
        if (a.v.base.re < 0) return -1;
        return 0;
    }
    bool prepared = false;
    int zero_mult = 0;
    Rat rho;
    for (long p = 64; p <= max_bits_; p *= 2) {
        Ball b = eval(a, p);
        Rat lo = mpf_to_rat(b.c.re - b.r), hi = mpf_to_rat(b.c.re + b.r);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (!prepared) {
            QPoly s = re_annihilator(annihilator(a));
            rho = root_lower_bound(
                s, zero_mult, [](const Rat& r) { return rat_abs(r); },
                [](const Rat& r) { return rat_abs(r); });
            prepared = true;
        }
        if (zero_mult > 0 && -rho < lo && hi < rho) return 0;
    }
    fail("numeric.precision-cap", "sign of real part undecided at precision cap");
}

int Embedding::sign_im(const TF& a) {
    if (is_zero(a)) return 0;
    if (a.v.level == 0) {
        if (a.v.base.im > 0) return 1;
        if (a.v.base.im < 0) return -1;
        return 0;
    }
    bool prepared = false;
    int zero_mult = 0;
    Rat rho;
    for (long p = 64; p <= max_bits_; p *= 2) {
        Ball b = eval(a, p);
        Rat lo = mpf_to_rat(b.c.im - b.r), hi = mpf_to_rat(b.c.im + b.r);
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        if (!prepared) {
            SPoly t = im_annihilator(annihilator(a));
            rho = root_lower_bound(t, zero_mult, scalar_abs_lower,
                                   scalar_abs_upper);
            prepared = true;
        }
        if (zero_mult > 0 && -rho < lo && hi < rho) return 0;
    }
    fail("numeric.precision-cap",
         "sign of imaginary part undecided at precision cap");
}

int Embedding::compare(const TF& a, const TF& b) {
    TF d = a - b;
    if (is_zero(d)) return 0;
    int sr = sign_re(d);
    if (sr != 0) return sr;
    return sign_im(d);
}

bool Embedding::is_positive_real(const TF& a) {
    return !is_zero(a) && sign_im(a) == 0 && sign_re(a) > 0;
}

int Embedding::compare_arg(const TF& a, const TF& b) {
    if (is_zero(a) || is_zero(b))
        fail("numeric.internal", "argument of zero requested");
    auto sector = [&](const TF& x) {
        int sr = sign_re(x), si = sign_im(x);
        if (si == 0) return sr > 0 ? 0 : 4;
        if (si > 0) {
            if (sr > 0) return 1;
            if (sr == 0) return 2;
            return 3;
        }
        if (sr < 0) return 5;
        if (sr == 0) return 6;
        return 7;
    };
    int sa = sector(a), sb = sector(b);
    if (sa != sb) return sa < sb ? -1 : 1;
    // same sector: the argument difference lies in (-pi/2, pi/2)
    TF d = b / a;
    int si = sign_im(d);
    if (si > 0) return -1;
    if (si < 0) return 1;
    return 0;
}

} // namespace germ
