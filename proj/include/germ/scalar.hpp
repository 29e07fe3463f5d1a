#ifndef GERM_SCALAR_HPP
#define GERM_SCALAR_HPP

#include "germ/rational.hpp"

#include <iosfwd>
#include <string>

namespace germ {

/// Gaussian rational a + b*i.  The coefficient field of every exact
/// computation in the library.
struct Scalar {
    Rat re;
    Rat im;

    Scalar() = default;
    Scalar(long n) : re(n) {}
    Scalar(Rat r) : re(std::move(r)) {}
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar i() { return Scalar(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    Scalar conj() const { return Scalar(re, -im); }
    // re^2 + im^2, the norm down to Q.
    Rat norm() const { return re * re + im * im; }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) { re += o.re; im += o.im; return *this; }
    Scalar& operator-=(const Scalar& o) { re -= o.re; im -= o.im; return *this; }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Total order for canonical term/key sorting only; no algebraic meaning.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::string str() const;
};

Scalar inv(const Scalar& s);
inline bool is_zero(const Scalar& s) { return s.is_zero(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s);

} // namespace germ

#endif
