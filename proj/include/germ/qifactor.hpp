#ifndef GERM_QIFACTOR_HPP
#define GERM_QIFACTOR_HPP

#include "germ/scalar.hpp"
#include "germ/unipoly.hpp"
#include "germ/zfactor.hpp"

#include <utility>
#include <vector>

namespace germ {

using SPoly = UniPoly<Scalar>;

struct QiFactorization {
    Scalar lead; // f = lead * prod factor^mult, factors monic irreducible
    std::vector<std::pair<SPoly, int>> factors;
};

/// Irreducible factorization over Q(i) (Trager: factor the norm over Q and
/// pull factors back through a gcd).
QiFactorization factor_qi(const SPoly& f);

/// Monic irreducible factors of a squarefree monic polynomial over Q(i).
std::vector<SPoly> factor_qi_squarefree_monic(const SPoly& f);

} // namespace germ

#endif
