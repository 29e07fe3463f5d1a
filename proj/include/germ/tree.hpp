#ifndef GERM_TREE_HPP
#define GERM_TREE_HPP

#include "germ/invariants.hpp"

#include <string>
#include <vector>

namespace germ {

/// Bar of the decorated merge tree (leaf when `leaf` is set: the conjugate
/// roots of one branch separating at the parent bar, bundled with weight w).
struct TreeNode {
    bool leaf = false;
    Rat height;    // bar height; unset for leaves
    int branch = 0; // leaf: 1-based branch index
    int d = 0;      // leaf: component multiplicity
    int w = 0;      // leaf: number of conjugate roots bundled here
    std::vector<TreeNode> children;
};

struct KuoLuTree {
    TreeNode root; // bar at height 1
    std::vector<BranchSummary> branches;
};

/// Single-linkage merge tree of all conjugate roots under the contact
/// ultrametric; built from root-level contacts, which refine the invariant's
/// per-pair maxima.
KuoLuTree build_tree(const GermAnalysis& A);

/// "(L d=⟨d⟩ w=⟨w⟩)" / "(H=⟨height⟩ ⟨children sorted by encoding⟩)";
/// equal strings iff the decorated trees are isomorphic.
std::string canonical_encoding(const KuoLuTree& t);

/// Graphviz text; leaves labeled "d=⟨multiplicity⟩, pairs=⟨list⟩".
std::string tree_dot(const KuoLuTree& t);

/// Tree-model criterion: encodings coincide.
bool equivalent(const BiPoly& f, const BiPoly& g);

/// Brute-force criterion: some bijection of branch sets preserves
/// multiplicities, Puiseux pairs, and all pairwise intersection numbers.
bool equivalent_matcher(const GermInvariant& a, const GermInvariant& b);

} // namespace germ

#endif
