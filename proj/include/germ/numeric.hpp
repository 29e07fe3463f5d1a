#ifndef GERM_NUMERIC_HPP
#define GERM_NUMERIC_HPP

#include "germ/tower.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace germ {

/// Arbitrary-precision real; precision is taken from the thread default at
/// construction time (see set_prec_bits).
using MPF = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

void set_prec_bits(long bits);

struct CNum {
    MPF re, im;

    CNum() : re(0), im(0) {}
    CNum(MPF r, MPF i) : re(std::move(r)), im(std::move(i)) {}

    CNum operator-() const { return {-re, -im}; }
    friend CNum operator+(const CNum& a, const CNum& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CNum operator-(const CNum& a, const CNum& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CNum operator*(const CNum& a, const CNum& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CNum operator/(const CNum& a, const CNum& b) {
        MPF d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
};

MPF cnum_abs(const CNum& a);

/// Complex ball: all values within distance r of c.  Operations pad the
/// radius to absorb rounding of the center arithmetic.
struct Ball {
    CNum c;
    MPF r;

    Ball() : r(0) {}
    Ball(CNum center, MPF rad) : c(std::move(center)), r(std::move(rad)) {}

    MPF abs_upper() const { return cnum_abs(c) + r; }
    MPF abs_lower() const; // 0 when the ball contains 0
    bool excludes_zero() const { return cnum_abs(c) > r; }
};

Ball ball_exact(const Scalar& s);
Ball ball_add(const Ball& a, const Ball& b);
Ball ball_sub(const Ball& a, const Ball& b);
Ball ball_mul(const Ball& a, const Ball& b);
Ball ball_div(const Ball& a, const Ball& b); // b must exclude zero

struct RootDisk {
    CNum z;
    MPF r;
};

/// All roots of a squarefree polynomial given by ball coefficients (lowest
/// first), certified to lie in pairwise disjoint disks.  nullopt when the
/// working precision cannot separate them.
std::optional<std::vector<RootDisk>> certified_roots(const std::vector<Ball>& coeffs);

// ---- exact real-root machinery over Q ----

int sign_at(const QPoly& f, const Rat& x);
std::vector<QPoly> sturm_chain(const QPoly& f);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<QPoly>& chain, const Rat& a, const Rat& b);
/// Disjoint open rational intervals, one per real root; endpoints are not
/// roots.  Input must be squarefree.
std::vector<std::pair<Rat, Rat>> isolate_real_roots(const QPoly& f);

/// A deterministic embedding of a tower into C.  Each generator is sent to
/// the minimal root of its minimal polynomial in the (re, im)-lexicographic
/// order; ties in the real part are resolved exactly through rational
/// annihilators.
class Embedding {
public:
    explicit Embedding(const Tower& tw) : tw_(&tw) {}

    void set_max_bits(long b) { max_bits_ = b; }
    long max_bits() const { return max_bits_; }

    /// Certified enclosure of the value of a, computed at >= bits precision.
    Ball eval(const TF& a, long bits);
    std::complex<double> approx(const TF& a);

    /// (re, im)-lexicographic comparison of values: -1, 0 or +1.
    int compare(const TF& a, const TF& b);
    int sign_re(const TF& a);
    int sign_im(const TF& a);
    bool is_positive_real(const TF& a);
    /// Compare arguments in [0, 2pi); both arguments must be nonzero.
    int compare_arg(const TF& a, const TF& b);

    /// Squarefree rational polynomial vanishing at the value of a.
    QPoly annihilator(const TF& a);

private:
    void ensure(long bits);
    Ball eval_elem(const TElem& e) const;

    const Tower* tw_;
    long bits_ = 0;
    long max_bits_ = 512;
    std::vector<RootDisk> gens_;
};

} // namespace germ

#endif
