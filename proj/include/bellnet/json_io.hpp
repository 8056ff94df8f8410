#pragma once

#include "bellnet/behavior.hpp"
#include "bellnet/polytope.hpp"
#include "bellnet/states.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace bellnet {

using Json = nlohmann::json;

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

/// {"scenario": {...}, "table": [... x-major flat ...]}
Json behavior_to_json(const Behavior& b);
Behavior behavior_from_json(const Json& j);

/// Behavior JSON plus {"bound": ..., "bound_kind": ...}
Json functional_to_json(const BellFunctional& f);
BellFunctional functional_from_json(const Json& j);

/// {"v_star": ..., "member": ..., "certificate": {coeffs, bound} | null}
Json verdict_to_json(const MembershipVerdict& v);

/// Complex matrices as row-major [re, im] pairs.
Json operator_to_json(const Operator& op);
Operator operator_from_json(const Json& j);

Json assignment_to_json(const MeasurementAssignment& ma);
MeasurementAssignment assignment_from_json(const Json& j);

/// {"parties": [...], "links": [{"state": "iso", "p": .., "d": ..,
///  "assign": [...]}, ...]}; state kinds: iso, phi, ghz.
std::pair<NetworkLayout, std::vector<DensityState>> network_from_json(const Json& j);
ComposedNetwork compose_network_json(const Json& j);

}  // namespace bellnet
