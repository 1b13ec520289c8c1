#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "kinkchain/dispersion.hpp"
#include "kinkchain/ed.hpp"
#include "kinkchain/ground.hpp"
#include "kinkchain/interface.hpp"

namespace kinkchain {

using Json = nlohmann::json;

// Site sets are written as sorted 1-based site lists; NaN as null.
[[nodiscard]] Json to_json(const SiteSet& x);
[[nodiscard]] SiteSet site_set_from_json(const Json& j, int n_sites);

[[nodiscard]] Json to_json(const TruncationPolicy& policy);
[[nodiscard]] TruncationPolicy policy_from_json(const Json& j);

[[nodiscard]] Json to_json(const GroundSolution& sol);
[[nodiscard]] GroundSolution ground_from_json(const Json& j);

[[nodiscard]] Json to_json(const SeamExpansion& seam);
[[nodiscard]] SeamExpansion seam_from_json(const Json& j);

[[nodiscard]] Json to_json(const InterfaceSolution& sol);
[[nodiscard]] InterfaceSolution interface_from_json(const Json& j);

[[nodiscard]] Json to_json(const DispersionSeries& series);
[[nodiscard]] DispersionSeries dispersion_from_json(const Json& j);

[[nodiscard]] Json to_json(const SectorSpectrum& sec);

// Structural check of a per-cell result document. Returns the list of
// problems found, empty when the document conforms.
[[nodiscard]] std::vector<std::string> validate_result_document(const Json& doc);

}  // namespace kinkchain
