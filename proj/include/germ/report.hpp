#ifndef GERM_REPORT_HPP
#define GERM_REPORT_HPP

#include "germ/deform.hpp"
#include "germ/tree.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace germ {

using Json = nlohmann::json; // keys sorted, dumps are byte-deterministic

Json analyze_report(const GermAnalysis& A, const KuoLuTree& tree,
                    const std::optional<MilnorDelta>& md);

Json compare_report(const std::string& enc1, const std::string& enc2,
                    size_t branches1, size_t branches2);

Json deform_report(const NormalFamily& nf, size_t path_points,
                   const RatioReport& w, const HornReport& horns,
                   const FlowReport& flow);

std::string dump_report(const Json& j);

} // namespace germ

#endif
