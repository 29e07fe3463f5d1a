#ifndef GERM_ZFACTOR_HPP
#define GERM_ZFACTOR_HPP

#include "germ/rational.hpp"
#include "germ/unipoly.hpp"

#include <utility>
#include <vector>

namespace germ {

using QPoly = UniPoly<Rat>;

struct QFactorization {
    Rat lead; // f = lead * prod factor^mult, factors monic irreducible
    std::vector<std::pair<QPoly, int>> factors;
};

/// Irreducible factorization over Q (squarefree split + Zassenhaus:
/// factor mod p, Hensel lift, subset recombination).
QFactorization factor_q(const QPoly& f);

/// Monic irreducible factors of a squarefree monic polynomial over Q.
std::vector<QPoly> factor_q_squarefree_monic(const QPoly& f);

/// Yun squarefree decomposition over a field of characteristic 0.
template <class C>
std::vector<std::pair<UniPoly<C>, int>> squarefree_decompose_field(UniPoly<C> f) {
    std::vector<std::pair<UniPoly<C>, int>> out;
    f = f.monic();
    if (f.degree() <= 0) return out;
    UniPoly<C> fp = f.derivative();
    UniPoly<C> a = gcd_field(f, fp);
    UniPoly<C> b = f / a;
    UniPoly<C> c = fp / a;
    int mult = 1;
    while (b.degree() > 0) {
        UniPoly<C> d = c - b.derivative();
        UniPoly<C> g = gcd_field(b, d);
        if (g.degree() > 0) out.push_back({g.monic(), mult});
        b = b / g;
        c = d / g;
        ++mult;
    }
    return out;
}

} // namespace germ

#endif
