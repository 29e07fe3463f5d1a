#include "germ/report.hpp"

namespace germ {

namespace {

Json rat_matrix(const std::vector<std::vector<Rat>>& m) {
    Json out = Json::array();
    for (auto& row : m) {
        Json r = Json::array();
        for (auto& v : row) r.push_back(rat_str(v));
        out.push_back(std::move(r));
    }
    return out;
}

Json cx_json(const Cx& z) { return Json::array({z.real(), z.imag()}); }

} // namespace

Json analyze_report(const GermAnalysis& A, const KuoLuTree& tree,
                    const std::optional<MilnorDelta>& md) {
    Json j;
    j["schema"] = "plane-germ/1";
    j["command"] = "analyze";
    j["shear"] = A.shear.str();
    j["truncation"] = rat_str(A.trunc);
    j["germ_order"] = A.invariant.germ_order;
    Json branches = Json::array();
    for (size_t k = 0; k < A.branches.size(); ++k) {
        const Branch& b = A.branches[k];
        Json bj;
        bj["d"] = b.mult;
        bj["m"] = b.ram;
        Json pairs = Json::array();
        for (auto& p : A.invariant.branches[k].pairs)
            pairs.push_back(Json::array({p.p, p.q}));
        bj["pairs"] = std::move(pairs);
        Json ce = Json::array();
        for (auto& e : b.char_exponents) ce.push_back(rat_str(e));
        bj["char_exponents"] = std::move(ce);
        Json sc = Json::array();
        for (auto& e : A.invariant.self_contacts[k]) sc.push_back(rat_str(e));
        bj["self_contacts"] = std::move(sc);
        branches.push_back(std::move(bj));
    }
    j["branches"] = std::move(branches);
    j["contact"] = rat_matrix(A.invariant.contact);
    j["intersections"] = A.invariant.intersections;
    if (md) {
        j["mu"] = md->mu;
        j["delta"] = md->delta;
        j["r"] = md->r;
        j["consistent"] = md->consistent;
    }
    j["tree"] = canonical_encoding(tree);
    return j;
}

Json compare_report(const std::string& enc1, const std::string& enc2,
                    size_t branches1, size_t branches2) {
    Json j;
    j["schema"] = "plane-germ/1";
    j["command"] = "compare";
    j["encoding1"] = enc1;
    j["encoding2"] = enc2;
    bool eq = enc1 == enc2;
    j["equivalent"] = eq;
    if (eq) {
        // equality of canonical encodings matches branches in canonical order
        Json corr = Json::array();
        for (size_t i = 0; i < branches1; ++i) corr.push_back(i);
        j["correspondence"] = std::move(corr);
    } else {
        j["branch_counts"] = Json::array({branches1, branches2});
    }
    return j;
}

Json deform_report(const NormalFamily& nf, size_t path_points,
                   const RatioReport& w, const HornReport& horns,
                   const FlowReport& flow) {
    Json j;
    j["schema"] = "plane-germ/1";
    j["command"] = "deform-check";
    j["joint"] = nf.joint;
    j["path_points"] = path_points;

    Json wj;
    wj["bounded"] = w.bounded;
    Json per = Json::object();
    for (size_t d = 0; d < w.directions.size(); ++d)
        per[w.directions[d]] = w.maxima[d];
    wj["maxima"] = std::move(per);
    j["w"] = std::move(wj);

    Json hj;
    hj["bounded"] = horns.bounded;
    Json regs = Json::array();
    for (auto& r : horns.regions) {
        Json rj;
        rj["name"] = r.name;
        rj["M"] = r.M;
        rj["maxima"] = r.maxima;
        rj["delta"] = r.delta;
        rj["samples"] = r.samples;
        rj["bounded"] = r.bounded;
        regs.push_back(std::move(rj));
    }
    hj["regions"] = std::move(regs);
    Json cov;
    cov["ok"] = horns.covering_ok;
    cov["checked"] = horns.covering_checked;
    if (!horns.covering_ok) {
        cov["witness_x"] = cx_json(horns.witness_x);
        cov["witness_t"] = cx_json(horns.witness_t);
    }
    hj["covering"] = std::move(cov);
    j["horns"] = std::move(hj);

    Json fj;
    fj["ok"] = flow.ok;
    fj["max_drift"] = flow.max_drift;
    fj["max_distance"] = flow.max_distance;
    Json seeds = Json::array();
    for (auto& s : flow.seeds) {
        Json sj;
        sj["stratum"] = s.stratum == Stratum::X ? "X" : "U";
        sj["x0"] = cx_json(s.x0);
        sj["y0"] = cx_json(s.y0);
        sj["x1"] = cx_json(s.x1);
        sj["y1"] = cx_json(s.y1);
        if (s.stratum == Stratum::X) sj["distance"] = s.distance;
        else sj["drift"] = s.drift;
        sj["ok"] = s.ok;
        seeds.push_back(std::move(sj));
    }
    fj["seeds"] = std::move(seeds);
    j["flow"] = std::move(fj);

    bool ok = w.bounded && horns.bounded && horns.covering_ok && flow.ok;
    j["ok"] = ok;
    return j;
}

std::string dump_report(const Json& j) { return j.dump(2) + "\n"; }

} // namespace germ
