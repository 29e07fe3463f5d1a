#ifndef GERM_TOWER_HPP
#define GERM_TOWER_HPP

#include "germ/qifactor.hpp"
#include "germ/scalar.hpp"
#include "germ/unipoly.hpp"

#include <utility>
#include <vector>

namespace germ {

class Tower;

/// Element of an iterated algebraic extension of Q(i).  A level-0 element is
/// a plain scalar; a level-k element is a dense coefficient vector over
/// level k-1, reduced modulo the tower's k-th minimal polynomial.
struct TElem {
    int level = 0;
    Scalar base;           // level == 0
    std::vector<TElem> up; // level > 0, trailing zeros trimmed

    static TElem scalar(Scalar s) {
        TElem e;
        e.base = std::move(s);
        return e;
    }
    bool zero() const {
        if (level == 0) return base.is_zero();
        return up.empty();
    }
};

/// Field-element handle: a TElem together with its tower.  A null tower marks
/// a plain Q(i) constant, combinable with elements of any tower.
struct TF {
    const Tower* tw = nullptr;
    TElem v;

    TF() = default;
    TF(long n) { v.base = Scalar(n); }
    TF(const Tower* t, TElem e) : tw(t), v(std::move(e)) {}

    bool is_rational() const { return v.level == 0 && v.base.is_real(); }
};

using TPoly = UniPoly<TF>;

bool is_zero(const TF& a);
TF operator-(const TF& a);
TF operator+(const TF& a, const TF& b);
TF operator-(const TF& a, const TF& b);
TF operator*(const TF& a, const TF& b);
TF inv(const TF& a);
TF operator/(const TF& a, const TF& b);
inline TF exact_div(const TF& a, const TF& b) { return a / b; }
bool operator==(const TF& a, const TF& b);
inline bool operator!=(const TF& a, const TF& b) { return !(a == b); }

/// Append-only tower of algebraic extensions of Q(i).  One tower is shared by
/// everything derived from a single germ so that coefficients from different
/// branches can be compared exactly.
class Tower {
public:
    Tower() = default;
    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    int levels() const { return static_cast<int>(minpolys_.size()); }
    int degree() const; // total extension degree over Q(i)
    int level_degree(int k) const { return minpolys_[k - 1].degree(); }
    const TPoly& minpoly(int k) const { return minpolys_[k - 1]; }

    void set_degree_cap(int cap) { cap_ = cap; }
    int degree_cap() const { return cap_; }

    TF from_scalar(Scalar s) const { return TF(this, TElem::scalar(std::move(s))); }
    TF gen(int level) const;

    // raw-element arithmetic; operands may sit at different levels
    TElem promote(TElem e, int level) const;
    TElem add(const TElem& a, const TElem& b) const;
    TElem neg(const TElem& a) const;
    TElem mul(const TElem& a, const TElem& b) const;
    TElem invert(const TElem& a) const;

    /// Adjoin a root of a monic polynomial irreducible over the current top
    /// level; returns the new generator.
    TF adjoin(const TPoly& p);

    /// Monic irreducible factors of a squarefree monic polynomial over the
    /// current tower (Trager descent to Q(i)).
    std::vector<TPoly> factor_squarefree(const TPoly& f) const;

    /// All roots of a monic polynomial with multiplicity, adjoining new
    /// generators until it splits into linear factors.
    std::vector<std::pair<TF, int>> split_completely(const TPoly& f);

    /// A primitive m-th root of unity, adjoining one if necessary.
    TF root_of_unity(int m);

    /// Norm of f down to Q(i): the product of the images of f under all
    /// embeddings of the tower.  Vanishes wherever f does.
    SPoly norm_qi(const TPoly& f) const;

private:
    TElem make(int level, std::vector<TElem> coeffs) const;
    std::vector<TPoly> factor_at(int level, const TPoly& f) const;
    TPoly eliminate(const TPoly& f, int level) const;

    std::vector<TPoly> minpolys_;
    int cap_ = 512;
    std::vector<std::pair<int, TF>> unity_cache_;
};

} // namespace germ

#endif
