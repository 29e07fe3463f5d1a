#include "germ/tree.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace germ {

namespace {

struct RootRef {
    int branch; // 0-based
    int conj;   // 0-based
};

// bottom level of the recursion: group the singletons of one branch that
// separate at this bar into a single weighted leaf
TreeNode make_node(const std::vector<RootRef>& S, const Rat& height,
                   const GermAnalysis& A,
                   const std::vector<std::vector<Rat>>& contact,
                   const std::vector<int>& flat_idx) {
    TreeNode node;
    node.height = height;
    if (S.size() == 1) {
        TreeNode leaf;
        leaf.leaf = true;
        leaf.branch = S[0].branch + 1;
        leaf.d = A.branches[S[0].branch].mult;
        leaf.w = 1;
        node.children.push_back(leaf);
        return node;
    }
    // classes of the equivalence "contact > height" (transitive by the
    // ultrametric inequality)
    std::vector<int> cls(S.size(), -1);
    int ncls = 0;
    for (size_t i = 0; i < S.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = ncls++;
        for (size_t j = i + 1; j < S.size(); ++j) {
            if (cls[j] >= 0) continue;
            int a = flat_idx[i], b = flat_idx[j];
            if (contact[a][b] > height) cls[j] = cls[i];
        }
    }
    std::map<int, std::vector<size_t>> groups;
    for (size_t i = 0; i < S.size(); ++i) groups[cls[i]].push_back(i);
    std::map<int, int> leaf_w; // per-branch singleton bundles
    for (auto& [id, members] : groups) {
        (void)id;
        if (members.size() == 1) {
            ++leaf_w[S[members[0]].branch];
            continue;
        }
        std::vector<RootRef> sub;
        std::vector<int> sub_idx;
        for (size_t i : members) {
            sub.push_back(S[i]);
            sub_idx.push_back(flat_idx[i]);
        }
        Rat h;
        bool first = true;
        for (size_t i = 0; i < sub_idx.size(); ++i)
            for (size_t j = i + 1; j < sub_idx.size(); ++j) {
                Rat c = contact[sub_idx[i]][sub_idx[j]];
                if (first || c < h) h = c;
                first = false;
            }
        if (!(h > height))
            fail("invariants.ultrametric", "merge heights not strictly increasing");
        node.children.push_back(make_node(sub, h, A, contact, sub_idx));
    }
    for (auto& [bk, w] : leaf_w) {
        TreeNode leaf;
        leaf.leaf = true;
        leaf.branch = bk + 1;
        leaf.d = A.branches[bk].mult;
        leaf.w = w;
        node.children.push_back(leaf);
    }
    return node;
}

std::string encode(const TreeNode& n) {
    if (n.leaf) {
        std::ostringstream os;
        os << "(L d=" << n.d << " w=" << n.w << ")";
        return os.str();
    }
    std::vector<std::string> kids;
    for (auto& c : n.children) kids.push_back(encode(c));
    std::sort(kids.begin(), kids.end());
    std::string s = "(H=" + rat_str(n.height);
    for (auto& k : kids) s += " " + k;
    return s + ")";
}

std::string pairs_label(const std::vector<PuiseuxPair>& pairs) {
    std::string s = "[";
    for (size_t i = 0; i < pairs.size(); ++i) {
        if (i) s += ",";
        s += "(" + std::to_string(pairs[i].p) + "," + std::to_string(pairs[i].q) + ")";
    }
    return s + "]";
}

void dot_node(const TreeNode& n, const KuoLuTree& t, std::ostringstream& os,
              int parent, int& next) {
    int id = next++;
    if (n.leaf) {
        os << "  n" << id << " [shape=box, label=\"d=" << n.d << ", pairs="
           << pairs_label(t.branches[n.branch - 1].pairs) << "\"];\n";
    } else {
        os << "  n" << id << " [label=\"" << rat_str(n.height) << "\"];\n";
    }
    if (parent >= 0) os << "  n" << parent << " -> n" << id << ";\n";
    // deterministic child order: by encoding, as in the canonical form
    std::vector<const TreeNode*> kids;
    for (auto& c : n.children) kids.push_back(&c);
    std::sort(kids.begin(), kids.end(), [](const TreeNode* a, const TreeNode* b) {
        return encode(*a) < encode(*b);
    });
    for (auto* c : kids) dot_node(*c, t, os, id, next);
}

} // namespace

KuoLuTree build_tree(const GermAnalysis& A) {
    std::vector<RootRef> flat;
    for (size_t k = 0; k < A.conjugates.size(); ++k)
        for (size_t j = 0; j < A.conjugates[k].size(); ++j)
            flat.push_back({(int)k, (int)j});
    int n = (int)flat.size();
    std::vector<std::vector<Rat>> contact(n, std::vector<Rat>(n, Rat(0)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const PuiseuxRoot& ra = A.conjugates[flat[a].branch][flat[a].conj];
            const PuiseuxRoot& rb = A.conjugates[flat[b].branch][flat[b].conj];
            contact[a][b] = contact[b][a] = contact_order(ra, rb);
        }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    KuoLuTree t;
    t.root = make_node(flat, Rat(1), A, contact, idx);
    t.branches = A.invariant.branches;
    return t;
}

std::string canonical_encoding(const KuoLuTree& t) { return encode(t.root); }

std::string tree_dot(const KuoLuTree& t) {
    std::ostringstream os;
    os << "digraph kuolu {\n  rankdir=BT;\n";
    int next = 0;
    dot_node(t.root, t, os, -1, next);
    os << "}\n";
    return os.str();
}

bool equivalent(const BiPoly& f, const BiPoly& g) {
    return canonical_encoding(build_tree(analyze_germ(f))) ==
           canonical_encoding(build_tree(analyze_germ(g)));
}

bool equivalent_matcher(const GermInvariant& a, const GermInvariant& b) {
    int r = (int)a.branches.size();
    if ((int)b.branches.size() != r) return false;
    auto eqkey = [](const BranchSummary& x, const BranchSummary& y) {
        return x.d == y.d && x.m == y.m && x.pairs == y.pairs;
    };
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end());
    do {
        bool ok = true;
        for (int k = 0; k < r && ok; ++k)
            ok = eqkey(a.branches[k], b.branches[perm[k]]);
        for (int k = 0; k < r && ok; ++k)
            for (int l = k + 1; l < r && ok; ++l)
                ok = a.intersections[k][l] == b.intersections[perm[k]][perm[l]];
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

} // namespace germ
