#include "germ/invariants.hpp"

#include "germ/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace germ {

namespace {

// no coefficient difference up to the common truncation bound
bool roots_identical(const PuiseuxRoot& r1, const PuiseuxRoot& r2) {
    Rat upto = std::min(r1.trunc, r2.trunc);
    size_t i = 0, j = 0;
    while (i < r1.terms.size() || j < r2.terms.size()) {
        Rat a1 = i < r1.terms.size() ? r1.terms[i].alpha : upto + 1;
        Rat a2 = j < r2.terms.size() ? r2.terms[j].alpha : upto + 1;
        Rat a = std::min(a1, a2);
        if (a > upto) break;
        TF c1 = a1 == a ? r1.terms[i++].coeff : TF();
        TF c2 = a2 == a ? r2.terms[j++].coeff : TF();
        if (!(c1 == c2)) return false;
    }
    return true;
}

// max contact over all conjugate pairs plus the pair sum; asserts the
// max-contact Lemma (the canonical first roots realize the maximum)
std::pair<Rat, Rat> contact_and_sum(const std::vector<PuiseuxRoot>& ca,
                                    const std::vector<PuiseuxRoot>& cb) {
    Rat best, sum;
    bool init = false;
    for (auto& a : ca)
        for (auto& b : cb) {
            Rat o = contact_order(a, b);
            sum += o;
            if (!init || o > best) {
                best = o;
                init = true;
            }
        }
    Rat ff = contact_order(ca.back(), cb.back());
    if (ff != best)
        fail("invariants.lemma",
             "canonical first roots do not realize the maximal contact");
    return {ff, sum};
}

std::vector<PuiseuxRoot> all_conjugates(const Branch& b, Tower& tw) {
    std::vector<PuiseuxRoot> out;
    for (int j = 1; j <= b.ram; ++j) out.push_back(conjugate_expansion(b, j, tw));
    return out;
}

long rat_to_long(const Rat& r, const char* what) {
    if (rat_den(r) != 1)
        fail("invariants.integrality", std::string(what) + " is not an integer: " + rat_str(r));
    return rat_num(r).convert_to<long>();
}

std::string pairs_str(const std::vector<PuiseuxPair>& ps) {
    std::ostringstream os;
    for (auto& p : ps) os << "(" << p.p << "," << p.q << ")";
    return os.str();
}

// Certified truncation from the factor structure: every contact between two
// roots is bounded by the discriminant order of their factor (conjugates) or
// the resultant order of the two factors (cross contacts), so the maximum of
// those orders plus one separates everything.  Far sharper than the
// discriminant order of the full product, which sums over all pairs.
Rat truncation_from_factors(const std::vector<std::pair<BiPoly, int>>& factors,
                            const Scalar& c, const BiPoly& g) {
    std::vector<BiPoly> fs;
    for (auto& [f, e] : factors) {
        BiPoly s = f.shear(c);
        if (s.order() > 0) fs.push_back(std::move(s));
    }
    long bound = 0;
    for (size_t k = 0; k < fs.size(); ++k) {
        if (fs[k].deg_x() >= 2) {
            auto o = order_at_zero(discriminant_x(fs[k]));
            if (!o) return sufficient_truncation(g); // non-squarefree factor
            bound = std::max<long>(bound, *o);
        }
        for (size_t l = k + 1; l < fs.size(); ++l) {
            auto o = order_at_zero(resultant_x(fs[k], fs[l]));
            if (!o) return sufficient_truncation(g); // shared component
            bound = std::max<long>(bound, *o);
        }
    }
    if (fs.empty()) return sufficient_truncation(g);
    return Rat(bound + 1);
}

} // namespace

std::vector<PuiseuxPair> puiseux_pairs(const std::vector<Rat>& char_exponents, int m) {
    std::vector<PuiseuxPair> out;
    Int acc = 1;
    for (const Rat& e : char_exponents) {
        Rat scaled = e * Rat(acc);
        Int p = rat_den(scaled), q = rat_num(scaled);
        if (p < 2)
            fail("invariants.pairs", "characteristic exponent " + rat_str(e) +
                                         " does not refine the denominator lattice");
        out.push_back({p.convert_to<long>(), q.convert_to<long>()});
        acc *= p;
    }
    if (acc != m)
        fail("invariants.pairs", "characteristic exponents do not generate the ramification");
    return out;
}

Rat branch_contact(const Branch& A, const Branch& B, Tower& tw) {
    return contact_and_sum(all_conjugates(A, tw), all_conjugates(B, tw)).first;
}

long intersection_multiplicity(const Branch& A, const Branch& B, Tower& tw) {
    Rat s = contact_and_sum(all_conjugates(A, tw), all_conjugates(B, tw)).second;
    return rat_to_long(s, "intersection multiplicity");
}

GermAnalysis analyze_germ_factored(const std::vector<std::pair<BiPoly, int>>& factors,
                                   const Rat& trunc_override) {
    if (factors.empty()) fail("input.not-a-germ", "empty factor list");
    BiPoly f = BiPoly::constant(Scalar(1));
    for (auto& [g, e] : factors) {
        if (e < 1) fail("input.not-a-germ", "factor exponents must be positive");
        f = f * g.pow((unsigned)e);
    }
    auto [g, c] = ensure_transverse(f);

    GermAnalysis A;
    A.input = f;
    A.transverse = g;
    A.shear = c;
    A.trunc = std::max(truncation_from_factors(factors, c, g), trunc_override);
    A.tower = std::make_shared<Tower>();
    A.embedding = std::make_shared<Embedding>(*A.tower);
    Tower& tw = *A.tower;
    Embedding& em = *A.embedding;

    // ---- expansion, keeping the given factor structure for the oracle ----
    struct Part {
        BiPoly poly; // sheared squarefree part
        std::vector<int> branch_idx;
    };
    std::vector<Part> parts;
    std::vector<Branch>& brs = A.branches;
    for (auto& [gf, e] : factors) {
        BiPoly sheared = gf.shear(c);
        if (sheared.order() == 0) continue; // unit factor
        for (auto& [part, pm] : squarefree_decompose(sheared).parts) {
            Part P{part, {}};
            for (auto& b : puiseux_expand(part, A.trunc, tw)) {
                b.mult = e * pm;
                int found = -1;
                for (int i = 0; i < (int)brs.size() && found < 0; ++i) {
                    if (brs[i].ram != b.ram) continue;
                    for (int j = 1; j <= brs[i].ram && found < 0; ++j)
                        if (roots_identical(conjugate_expansion(brs[i], j, tw), b.first))
                            found = i;
                }
                if (found >= 0) {
                    brs[found].mult += b.mult; // factors sharing a component
                } else {
                    found = (int)brs.size();
                    brs.push_back(std::move(b));
                }
                P.branch_idx.push_back(found);
            }
            parts.push_back(std::move(P));
        }
    }

    int r = (int)brs.size();
    for (auto& b : brs) canonical_first_root(b, tw, em);
    auto& conj = A.conjugates;
    for (auto& b : brs) conj.push_back(all_conjugates(b, tw));

    // ---- pairwise data ----
    GermInvariant& inv = A.invariant;
    inv.contact.assign(r, std::vector<Rat>(r, Rat(0)));
    inv.intersections.assign(r, std::vector<long>(r, 0));
    inv.self_contacts.assign(r, {});
    for (int k = 0; k < r; ++k)
        for (int l = k + 1; l < r; ++l) {
            auto [cc, sum] = contact_and_sum(conj[k], conj[l]);
            inv.contact[k][l] = inv.contact[l][k] = cc;
            long im = rat_to_long(sum, "intersection multiplicity");
            inv.intersections[k][l] = inv.intersections[l][k] = im;
        }
    for (int k = 0; k < r; ++k) {
        for (int i = 0; i < brs[k].ram; ++i)
            for (int j = i + 1; j < brs[k].ram; ++j)
                inv.self_contacts[k].push_back(contact_order(conj[k][i], conj[k][j]));
        std::sort(inv.self_contacts[k].begin(), inv.self_contacts[k].end());
    }

    // ---- exponent sets ----
    for (int k = 0; k < r; ++k) {
        Branch& b = brs[k];
        std::set<Rat> all;
        for (int j = 0; j + 1 < b.ram; ++j)
            all.insert(contact_order(b.first, conj[k][j]));
        for (int l = 0; l < r; ++l) {
            if (l == k) continue;
            for (auto& other : conj[l]) all.insert(contact_order(b.first, other));
        }
        b.lambda_all.assign(all.begin(), all.end());
        b.lambda_p = b.char_exponents;
        for (const Rat& a : b.lambda_p)
            if (!all.count(a))
                fail("invariants.lambda", "characteristic exponent missing from the contact set");
        b.lambda_free.clear();
        for (const Rat& a : b.lambda_all) {
            if (std::find(b.lambda_p.begin(), b.lambda_p.end(), a) != b.lambda_p.end())
                continue;
            Int lcm = 1;
            for (const Rat& p : b.lambda_p)
                if (p < a) lcm = int_lcm(lcm, rat_den(p));
            if (rat_den(a) <= lcm && lcm % rat_den(a) == 0) b.lambda_free.push_back(a);
        }
    }

    // ---- ordering robustness: the argument order over Lambda_P must agree
    // with the order over (Lambda_k, nonzero coefficients) ----
    for (int k = 0; k < r; ++k) {
        Branch& b = brs[k];
        if (b.ram <= 1) continue;
        std::vector<Rat> full;
        for (const Rat& a : b.lambda_p) full.push_back(a);
        for (const Rat& a : b.lambda_free) full.push_back(a);
        std::sort(full.begin(), full.end());
        std::vector<Rat> usable;
        for (const Rat& a : full)
            if (!is_zero(coeff_at(b.first, a))) usable.push_back(a);
        auto cmp_over = [&](const std::vector<Rat>& exps, int j1, int j2) {
            for (const Rat& a : exps) {
                int s = em.compare_arg(coeff_at(conj[k][j1], a), coeff_at(conj[k][j2], a));
                if (s) return s;
            }
            return 0;
        };
        std::vector<int> byP(b.ram), byK(b.ram);
        std::iota(byP.begin(), byP.end(), 0);
        byK = byP;
        std::sort(byP.begin(), byP.end(),
                  [&](int x, int y) { return cmp_over(b.lambda_p, x, y) < 0; });
        std::sort(byK.begin(), byK.end(),
                  [&](int x, int y) { return cmp_over(usable, x, y) < 0; });
        if (byP != byK)
            fail("invariants.ordering",
                 "argument order over Lambda_P disagrees with the order over Lambda_k");
        if (byP.front() != b.ram - 1)
            fail("invariants.ordering", "canonical first root is not argument-minimal");
    }

    // ---- summaries and canonical branch order ----
    inv.branches.clear();
    for (auto& b : brs)
        inv.branches.push_back({b.mult, b.ram, puiseux_pairs(b.char_exponents, b.ram)});
    std::vector<std::string> key(r);
    for (int k = 0; k < r; ++k) {
        std::ostringstream os;
        os << "d=" << brs[k].mult << ";m=" << brs[k].ram << ";P="
           << pairs_str(inv.branches[k].pairs) << ";S=";
        for (auto& s : inv.self_contacts[k]) os << rat_str(s) << ",";
        key[k] = os.str();
    }
    for (int round = 0; round < r; ++round) {
        std::vector<std::string> next(r);
        for (int k = 0; k < r; ++k) {
            std::vector<std::string> env;
            for (int l = 0; l < r; ++l)
                if (l != k)
                    env.push_back(rat_str(inv.contact[k][l]) + "@" + key[l]);
            std::sort(env.begin(), env.end());
            std::string s = key[k] + "|";
            for (auto& e : env) s += e + ";";
            next[k] = std::move(s);
        }
        key = std::move(next);
    }
    std::vector<int> perm(r);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int x, int y) { return key[x] < key[y]; });

    auto apply_perm = [&](auto& vec) {
        auto copy = vec;
        for (int k = 0; k < r; ++k) vec[k] = std::move(copy[perm[k]]);
    };
    apply_perm(brs);
    apply_perm(conj);
    apply_perm(inv.branches);
    apply_perm(inv.self_contacts);
    {
        auto cc = inv.contact;
        auto ii = inv.intersections;
        for (int k = 0; k < r; ++k)
            for (int l = 0; l < r; ++l) {
                inv.contact[k][l] = cc[perm[k]][perm[l]];
                inv.intersections[k][l] = ii[perm[k]][perm[l]];
            }
    }
    std::vector<int> inv_perm(r);
    for (int k = 0; k < r; ++k) inv_perm[perm[k]] = k;
    for (auto& P : parts)
        for (auto& idx : P.branch_idx) idx = inv_perm[idx];
    for (int k = 0; k < r; ++k) {
        brs[k].id = k + 1;
        brs[k].first.branch = k + 1;
        for (auto& root : conj[k]) root.branch = k + 1;
    }

    // ---- consistency checks ----
    inv.germ_order = g.order();
    long total = 0;
    for (auto& s : inv.branches) total += (long)s.d * s.m;
    if (total != inv.germ_order)
        fail("invariants.order", "sum of d_k * m_k does not match the germ order");
    for (int a = 0; a < r; ++a)
        for (int b2 = a + 1; b2 < r; ++b2)
            for (int c2 = b2 + 1; c2 < r; ++c2) {
                Rat x = inv.contact[a][b2], y = inv.contact[a][c2], z = inv.contact[b2][c2];
                Rat mn = std::min({x, y, z});
                int hits = (x == mn) + (y == mn) + (z == mn);
                if (hits < 2)
                    fail("invariants.ultrametric", "contact matrix violates the ultrametric");
            }

    // resultant oracle between coprime parts with unit x-leading coefficients
    for (size_t a = 0; a < parts.size(); ++a)
        for (size_t b2 = a + 1; b2 < parts.size(); ++b2) {
            bool shared = false;
            for (int i : parts[a].branch_idx)
                for (int j : parts[b2].branch_idx)
                    if (i == j) shared = true;
            if (shared) continue;
            // all x-roots of both parts must tend to the origin, otherwise the
            // resultant picks up intersections away from it
            auto local = [&](const Part& P) {
                long s = 0;
                for (int i : P.branch_idx) s += brs[i].ram;
                return s == (long)P.poly.deg_x();
            };
            if (!local(parts[a]) || !local(parts[b2])) continue;
            auto ro = order_at_zero(resultant_x(parts[a].poly, parts[b2].poly));
            long sum = 0;
            for (int i : parts[a].branch_idx)
                for (int j : parts[b2].branch_idx) sum += inv.intersections[i][j];
            if (!ro || *ro != sum)
                fail("invariants.oracle",
                     "contact-sum intersections disagree with the resultant order");
        }

    return A;
}

GermAnalysis analyze_germ(const BiPoly& f) { return analyze_germ_factored({{f, 1}}); }

GermInvariant germ_invariant(const BiPoly& f) { return analyze_germ(f).invariant; }

MilnorDelta milnor_delta_check(const BiPoly& f) {
    for (auto& [part, mult] : squarefree_decompose(f).parts)
        if (mult != 1)
            fail("invariants.non-reduced", "Milnor/delta check requires a squarefree germ");
    MilnorDelta out;
    GermAnalysis A = analyze_germ(f);
    out.r = (long)A.branches.size();

    if (f.order() <= 1) {
        out.mu = 0;
    } else {
        // minimal y-order of Res_x(g_x, g_y) over a few transverse shears
        long best = -1;
        int used = 0;
        for (const Scalar& c : shear_sequence()) {
            BiPoly g = f.shear(c);
            if (g.lowest_form_at_1t().eval(Scalar(0)).is_zero()) continue; // not transverse
            YPoly res = resultant_x(g.deriv_x(), g.deriv_y());
            auto o = order_at_zero(res);
            if (o && (best < 0 || *o < best)) best = *o;
            if (++used >= 4) break;
        }
        if (best < 0)
            fail("invariants.non-isolated", "partials share a component: non-isolated singularity");
        out.mu = best;
    }

    Rat delta;
    for (size_t k = 0; k < A.branches.size(); ++k) {
        Rat s;
        for (const Rat& o : A.invariant.self_contacts[k]) s += o;
        delta += s - Rat(A.branches[k].ram - 1, 2);
    }
    for (size_t k = 0; k < A.branches.size(); ++k)
        for (size_t l = k + 1; l < A.branches.size(); ++l)
            delta += A.invariant.intersections[k][l];
    out.delta = rat_to_long(delta, "delta");
    out.consistent = out.mu == 2 * out.delta - out.r + 1;
    return out;
}

} // namespace germ
