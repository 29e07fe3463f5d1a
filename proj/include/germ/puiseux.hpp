#ifndef GERM_PUISEUX_HPP
#define GERM_PUISEUX_HPP

#include "germ/bipoly.hpp"
#include "germ/numeric.hpp"
#include "germ/tower.hpp"

#include <vector>

namespace germ {

struct PuiseuxTerm {
    Rat alpha;
    TF coeff;
};

/// Truncated fractional power series x = sum coeff * y^alpha; exponents
/// strictly increasing, all >= 1, terms beyond trunc omitted by contract.
struct PuiseuxRoot {
    int branch = 0;
    int conj = 1;
    std::vector<PuiseuxTerm> terms;
    Rat trunc;
};

/// One irreducible local component.  The conjugates of `first` under
/// y^(1/m) -> theta^j y^(1/m) enumerate all m roots of the component;
/// conjugate_expansion(b, m) returns `first` itself.
struct Branch {
    int id = 0;
    int ram = 1;  // m_k
    int mult = 1; // d_k, multiplicity of the component in the full germ
    PuiseuxRoot first;
    std::vector<Rat> char_exponents;
    // contact-order exponent sets, filled by the invariant pipeline
    std::vector<Rat> lambda_p, lambda_free, lambda_all;
};

/// All roots of a germ after substituting y = t^n for a common denominator n:
/// a flat list of analytic series with pairwise t-contact orders.
struct ReparamRoots {
    long n = 1;
    std::vector<PuiseuxRoot> roots;        // exponents in t, integral
    std::vector<std::vector<Rat>> contact; // e_{m,j}, symmetric, diag 0
};

/// Expand a squarefree transverse factor into branches, one per irreducible
/// local component, with coefficients in the shared tower.  Expansions are
/// exact up to `trunc`, which must be >= sufficient_truncation of the full
/// germ the factor came from.
std::vector<Branch> puiseux_expand(const BiPoly& factor, const Rat& trunc, Tower& tw);

/// order_at_zero(disc_x of the squarefree part) + 1; strictly above every
/// pairwise contact order of the germ's roots.  Minimum 1.
Rat sufficient_truncation(const BiPoly& f);

/// The j-th conjugate lambda_{k,j}: coefficients a_alpha * theta^(j alpha m).
PuiseuxRoot conjugate_expansion(const Branch& b, int j, Tower& tw);

/// Reindex the conjugates so `first` is minimal in the lexicographic order on
/// argument sequences over the characteristic exponents.
void canonical_first_root(Branch& b, Tower& tw, Embedding& em);

/// Least exponent at which the two series differ; coefficients compared
/// exactly in the common tower.
Rat contact_order(const PuiseuxRoot& r1, const PuiseuxRoot& r2);

/// Coefficient at the given exponent; zero when no such term exists.
TF coeff_at(const PuiseuxRoot& r, const Rat& alpha);

} // namespace germ

#endif
