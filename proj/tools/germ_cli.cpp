#include "germ/error.hpp"
#include "germ/parser.hpp"
#include "germ/report.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace germ;

namespace {

Rat parse_rat_arg(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

bool squarefree(const GermAnalysis& A) {
    for (auto& b : A.branches)
        if (b.mult != 1) return false;
    return true;
}

std::string text_summary(const GermAnalysis& A, const KuoLuTree& tree,
                         const std::optional<MilnorDelta>& md) {
    std::ostringstream os;
    os << "branches: " << A.branches.size() << "\n";
    for (size_t k = 0; k < A.branches.size(); ++k) {
        const Branch& b = A.branches[k];
        os << "  #" << k << ": d=" << b.mult << " m=" << b.ram << " pairs=[";
        auto& pairs = A.invariant.branches[k].pairs;
        for (size_t i = 0; i < pairs.size(); ++i)
            os << (i ? "," : "") << "(" << pairs[i].p << "," << pairs[i].q << ")";
        os << "]\n";
    }
    if (md)
        os << "mu=" << md->mu << " delta=" << md->delta << " r=" << md->r
           << (md->consistent ? "" : "  (inconsistent!)") << "\n";
    os << "tree: " << canonical_encoding(tree) << "\n";
    return os.str();
}

int cmd_analyze(const std::string& poly, const std::string& trunc, bool json,
                bool dot) {
    Rat tr = trunc.empty() ? Rat(0) : parse_rat_arg(trunc);
    GermAnalysis A = analyze_germ_factored(parse_factored(poly), tr);
    KuoLuTree tree = build_tree(A);
    std::optional<MilnorDelta> md;
    if (squarefree(A)) md = milnor_delta_check(A.input);
    if (dot) std::cout << tree_dot(tree);
    else if (json) std::cout << dump_report(analyze_report(A, tree, md));
    else std::cout << text_summary(A, tree, md);
    return 0;
}

int cmd_compare(const std::string& p1, const std::string& p2, bool json) {
    GermAnalysis A = analyze_germ_factored(parse_factored(p1));
    GermAnalysis B = analyze_germ_factored(parse_factored(p2));
    std::string e1 = canonical_encoding(build_tree(A));
    std::string e2 = canonical_encoding(build_tree(B));
    Json rep = compare_report(e1, e2, A.branches.size(), B.branches.size());
    if (json) {
        std::cout << dump_report(rep);
    } else {
        std::cout << (e1 == e2 ? "equivalent" : "inequivalent") << "\n"
                  << "  " << e1 << "\n  " << e2 << "\n";
    }
    return e1 == e2 ? 0 : 1;
}

int cmd_deform_check(const std::string& p1, const std::string& p2,
                     const VerificationConfig& cfg) {
    NormalFamily nf;
    std::vector<ParamPoint> path;
    if (p2.empty()) {
        GermAnalysis A = analyze_germ_factored(parse_factored(p1));
        nf = normal_family(A);
        ParamPoint e0 = distinguished_point(nf);
        ParamPoint e1 = e0; // the family's own retraction onto the normal form
        e1.tau1 = Cx(0);
        e1.sf = Cx(0);
        path = {e0, e1};
    } else {
        GermAnalysis A = analyze_germ_factored(parse_factored(p1));
        GermAnalysis B = analyze_germ_factored(parse_factored(p2));
        if (canonical_encoding(build_tree(A)) != canonical_encoding(build_tree(B)))
            fail("compare.inequivalent", "the germs are not topologically equivalent");
        nf = joint_family(A, B);
        path = joint_path(nf, cfg);
    }
    ParamPoint p0 = path.front();
    RatioReport w = verify_w(nf, p0, cfg);
    HornReport horns = verify_wf_on_horns(nf, p0, cfg);
    FlowReport flow = flow_trivialize(nf, path, cfg);
    Json rep = deform_report(nf, path.size(), w, horns, flow);
    std::cout << dump_report(rep);
    return rep["ok"].get<bool>() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"plane curve germ analyzer"};
    app.require_subcommand(1);

    std::string poly1, poly2, trunc;
    bool json = false, dot = false;
    unsigned long long seed = 1;

    auto* an = app.add_subcommand("analyze", "invariants and tree of one germ");
    an->add_option("poly", poly1)->required();
    an->add_flag("--json", json);
    an->add_flag("--dot", dot);
    an->add_option("--trunc", trunc);
    an->add_option("--seed", seed);

    auto* cmp = app.add_subcommand("compare", "decide topological equivalence");
    cmp->add_option("poly1", poly1)->required();
    cmp->add_option("poly2", poly2)->required();
    cmp->add_flag("--json", json);

    VerificationConfig cfg;
    std::string radii;
    auto* dc = app.add_subcommand("deform-check",
                                  "numeric Whitney/flow verification");
    dc->add_option("poly1", poly1)->required();
    dc->add_option("poly2", poly2);
    dc->add_option("--samples", cfg.samples);
    dc->add_option("--radii", radii, "comma-separated |y| ladder");
    dc->add_option("--eps", cfg.eps);
    dc->add_option("--cap", cfg.C);
    dc->add_option("--seed", seed);
    dc->add_option("--flow-seeds", cfg.flow_seeds);
    dc->add_option("--covering-points", cfg.covering_points);

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) return cmd_analyze(poly1, trunc, json, dot);
        if (cmp->parsed()) return cmd_compare(poly1, poly2, json);
        cfg.seed = seed;
        if (!radii.empty()) {
            cfg.radii.clear();
            std::stringstream ss(radii);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.radii.push_back(std::stod(item));
            if (cfg.radii.empty()) fail("input.parse", "empty radii list");
        }
        return cmd_deform_check(poly1, poly2, cfg);
    } catch (const GermError& e) {
        std::cerr << "error " << e.code() << ": " << e.what() << "\n";
        if (e.code() == "compare.inequivalent") return 1;
        if (e.code() == "deform.path" || e.code() == "deform.flow") return 3;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
