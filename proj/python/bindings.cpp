#include "germ/error.hpp"
#include "germ/parser.hpp"
#include "germ/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace germ;

namespace {

GermAnalysis analyze_text(const std::string& poly, const std::string& trunc) {
    Rat tr(0);
    if (!trunc.empty()) {
        auto slash = trunc.find('/');
        if (slash == std::string::npos) tr = Rat(Int(trunc));
        else tr = Rat(Int(trunc.substr(0, slash)), Int(trunc.substr(slash + 1)));
    }
    return analyze_germ_factored(parse_factored(poly), tr);
}

bool is_squarefree(const GermAnalysis& A) {
    for (auto& b : A.branches)
        if (b.mult != 1) return false;
    return true;
}

} // namespace

PYBIND11_MODULE(_planegerm, m) {
    m.doc() = "plane curve germ analysis";

    py::register_exception<GermError>(m, "GermError");

    m.def(
        "tree_encoding",
        [](const std::string& poly) {
            return canonical_encoding(build_tree(analyze_text(poly, "")));
        },
        py::arg("poly"));

    m.def(
        "equivalent",
        [](const std::string& f, const std::string& g) {
            return canonical_encoding(build_tree(analyze_text(f, ""))) ==
                   canonical_encoding(build_tree(analyze_text(g, "")));
        },
        py::arg("poly1"), py::arg("poly2"));

    m.def(
        "analyze_json",
        [](const std::string& poly, const std::string& trunc) {
            GermAnalysis A = analyze_text(poly, trunc);
            std::optional<MilnorDelta> md;
            if (is_squarefree(A)) md = milnor_delta_check(A.input);
            return dump_report(analyze_report(A, build_tree(A), md));
        },
        py::arg("poly"), py::arg("trunc") = "");

    m.def(
        "tree_dot",
        [](const std::string& poly) {
            return tree_dot(build_tree(analyze_text(poly, "")));
        },
        py::arg("poly"));

    m.def(
        "milnor",
        [](const std::string& poly) {
            MilnorDelta md = milnor_delta_check(parse_poly(poly));
            return py::make_tuple(md.mu, md.delta, md.r, md.consistent);
        },
        py::arg("poly"));

    m.def(
        "deform_check_json",
        [](const std::string& f, const std::string& g, int samples,
           long covering_points, int flow_seeds, unsigned long long seed) {
            VerificationConfig cfg;
            cfg.samples = samples;
            cfg.covering_points = covering_points;
            cfg.flow_seeds = flow_seeds;
            cfg.seed = seed;
            NormalFamily nf;
            std::vector<ParamPoint> path;
            if (g.empty()) {
                nf = normal_family(analyze_text(f, ""));
                ParamPoint e0 = distinguished_point(nf);
                ParamPoint e1 = e0;
                e1.tau1 = Cx(0);
                e1.sf = Cx(0);
                path = {e0, e1};
            } else {
                GermAnalysis Af = analyze_text(f, "");
                GermAnalysis Ag = analyze_text(g, "");
                if (canonical_encoding(build_tree(Af)) !=
                    canonical_encoding(build_tree(Ag)))
                    fail("compare.inequivalent",
                         "the germs are not topologically equivalent");
                nf = joint_family(Af, Ag);
                path = joint_path(nf, cfg);
            }
            return dump_report(deform_report(
                nf, path.size(), verify_w(nf, path.front(), cfg),
                verify_wf_on_horns(nf, path.front(), cfg),
                flow_trivialize(nf, path, cfg)));
        },
        py::arg("poly1"), py::arg("poly2") = "", py::arg("samples") = 60,
        py::arg("covering_points") = 3000, py::arg("flow_seeds") = 5,
        py::arg("seed") = 1);
}
