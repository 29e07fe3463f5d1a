#ifndef GERM_BIPOLY_HPP
#define GERM_BIPOLY_HPP

#include "germ/scalar.hpp"
#include "germ/unipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace germ {

using YPoly = UniPoly<Scalar>; // univariate in y over Q(i)
using XYPoly = UniPoly<UniPoly<Scalar>>; // main variable x, coefficients in Q(i)[y]

/// Exact bivariate polynomial over the Gaussian rationals.  Term map keyed by
/// (x-exponent, y-exponent); zero coefficients are never stored.
class BiPoly {
public:
    using Key = std::pair<int, int>;

    BiPoly() = default;

    static BiPoly term(Scalar c, int ex, int ey);
    static BiPoly constant(Scalar c) { return term(std::move(c), 0, 0); }
    static BiPoly x() { return term(Scalar(1), 1, 0); }
    static BiPoly y() { return term(Scalar(1), 0, 1); }

    bool zero() const { return t_.empty(); }
    const std::map<Key, Scalar>& terms() const { return t_; }

    Scalar coeff(int ex, int ey) const;
    void set(int ex, int ey, Scalar c);

    int deg_x() const;
    int deg_y() const;
    int total_degree() const;
    /// Least total degree of a term; -1 for the zero polynomial.
    int order() const;

    BiPoly operator-() const;
    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly scaled(const Scalar& s) const;
    BiPoly pow(unsigned n) const;

    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
    friend bool operator<(const BiPoly& a, const BiPoly& b) { return a.t_ < b.t_; }

    BiPoly deriv_x() const;
    BiPoly deriv_y() const;

    /// f(x, y + c*x)
    BiPoly shear(const Scalar& c) const;
    Scalar eval(const Scalar& x, const Scalar& y) const;

    /// Lowest homogeneous form evaluated at (1, t), as a univariate in t.
    UniPoly<Scalar> lowest_form_at_1t() const;

    XYPoly as_poly_in_x() const;
    static BiPoly from_poly_in_x(const XYPoly& p);
    YPoly as_poly_in_y() const; // requires deg_x == 0

    /// Divide leading scalar out so the lexicographically largest term has
    /// coefficient 1.  Canonical representative up to unit factors.
    BiPoly unit_normal() const;

    std::string str() const;

private:
    std::map<Key, Scalar> t_;
};

// Configurable guard against runaway expansion (total degree of any product).
int bipoly_degree_cap();
void set_bipoly_degree_cap(int cap);

/// One positive-slope edge of the Newton polygon.  `from` is the endpoint
/// with the larger x-exponent; the slope-exponent (rise in y per unit drop
/// in x) is the common order of the roots attached to the edge.  The edge
/// polynomial collects the on-edge coefficients as z^(x-exp - to.first).
struct NewtonPolygonEdge {
    std::pair<int, int> from;
    std::pair<int, int> to;
    Rat slope_exponent;
    YPoly edge_poly;
};

/// Positive-slope lower-hull edges of the support, steepest first.
std::vector<NewtonPolygonEdge> newton_polygon(const BiPoly& f);

struct SquarefreeDecomposition {
    // (factor, multiplicity), multiplicities ascending
    std::vector<std::pair<BiPoly, int>> parts;
};

/// Multiplicity-graded decomposition f = unit * prod factor^mult with each
/// factor squarefree and factors pairwise coprime.
SquarefreeDecomposition squarefree_decompose(const BiPoly& f);

BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b);

/// Resultant of p and q with respect to x, a univariate polynomial in y.
YPoly resultant_x(const BiPoly& p, const BiPoly& q);
YPoly discriminant_x(const BiPoly& f);

/// Least y-exponent with nonzero coefficient; nullopt for the zero polynomial.
std::optional<int> order_at_zero(const YPoly& p);

/// The fixed shear search sequence 0, 1, -1, 2, -2, ..., i, -i, 1+i, ...
const std::vector<Scalar>& shear_sequence();

/// Shear f so that y = 0 is transverse to the tangent cone: returns
/// (f(x, y + c*x), c) with the lowest form L satisfying L(1,0) != 0.
std::pair<BiPoly, Scalar> ensure_transverse(const BiPoly& f);

} // namespace germ

#endif
