#ifndef GERM_INVARIANTS_HPP
#define GERM_INVARIANTS_HPP

#include "germ/puiseux.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace germ {

struct PuiseuxPair {
    long p = 0, q = 0;
    friend bool operator==(const PuiseuxPair&, const PuiseuxPair&) = default;
};

struct BranchSummary {
    int d = 1; // multiplicity of the component
    int m = 1; // ramification
    std::vector<PuiseuxPair> pairs;
};

/// The complete topological datum: per-branch (d_k, m_k, Puiseux pairs),
/// pairwise max-contacts with the branch-internal conjugate-contact multisets,
/// and the intersection matrix.
struct GermInvariant {
    std::vector<BranchSummary> branches;
    std::vector<std::vector<Rat>> contact;        // symmetric; diagonal 0
    std::vector<std::vector<Rat>> self_contacts;  // conjugate contacts, ascending
    std::vector<std::vector<long>> intersections; // symmetric; diagonal 0
    int germ_order = 0;
};

/// Everything derived from one germ: the shared tower and embedding, the
/// canonically ordered branches with all conjugate roots, and the invariant.
struct GermAnalysis {
    std::shared_ptr<Tower> tower;
    std::shared_ptr<Embedding> embedding;
    BiPoly input;      // product of the given factors
    BiPoly transverse; // input after the canonical shear
    Scalar shear;
    Rat trunc;
    std::vector<Branch> branches;
    std::vector<std::vector<PuiseuxRoot>> conjugates; // [k][j-1], j = 1..m_k
    GermInvariant invariant;
};

/// Characteristic exponents -> Puiseux pairs under the fixed convention:
/// pair i is exponent_i * (p_1 ... p_{i-1}) in lowest terms q_i / p_i.
std::vector<PuiseuxPair> puiseux_pairs(const std::vector<Rat>& char_exponents, int m);

/// O(lambda_{A,1}, lambda_{B,1}); asserts it equals the maximum over all
/// conjugate root pairs (the max-contact Lemma).
Rat branch_contact(const Branch& A, const Branch& B, Tower& tw);

/// Sum of contact orders over all conjugate root pairs; must be an integer.
long intersection_multiplicity(const Branch& A, const Branch& B, Tower& tw);

struct MilnorDelta {
    long mu = 0;
    long delta = 0;
    long r = 0;
    bool consistent = false; // mu == 2*delta - r + 1
};

/// Independent oracle: Milnor number from the resultant of the partials
/// against delta assembled from branch contacts.
MilnorDelta milnor_delta_check(const BiPoly& f);

GermAnalysis analyze_germ(const BiPoly& f);
/// Same pipeline, keeping the given factorization f = prod g_i^{e_i} so the
/// resultant oracle can cross-check intersections between distinct factors.
/// The truncation may be raised (never lowered) past the sufficient bound.
GermAnalysis analyze_germ_factored(const std::vector<std::pair<BiPoly, int>>& factors,
                                   const Rat& trunc_override = Rat(0));

GermInvariant germ_invariant(const BiPoly& f);

} // namespace germ

#endif
