#pragma once

// JSON encodings for every value that crosses the CLI or Python boundary.
// Probabilities and payoff expectations are written as "num/den" strings;
// the float rendering exists only for display.

#include "json.hpp"

#include "newcomb/consistency.hpp"
#include "newcomb/scenario.hpp"

namespace newcomb {

using Json = nlohmann::ordered_json;

struct Render {
  bool exact = true;
};

Json rational_json(const Rational& r, const Render& render = {});
/// Accepts "num/den" strings and integers; decimals only with `allow_decimal`.
Rational rational_from_json(const Json& j, bool allow_decimal = false);

Json to_json(const OutcomeSpace& space);
OutcomeSpace space_from_json(const Json& j);

/// {"space": [...], "mass": ["num/den", ...]}
Json to_json(const Dist& d, const Render& render = {});
Dist dist_from_json(const Json& j, bool allow_decimal = false);

Json to_json(const Joint& joint, const Render& render = {});

/// A net together with one table per node:
/// {"nodes": [{"name", "space", "parents", "owner", "cpd": [[row]...], "tied"?}]}
/// Nodes appear in topological order; rows follow the parents' row-major order.
struct NetDocument {
  BayesNet net;
  StrategyProfile profile;
};
Json to_json(const BayesNet& net, const StrategyProfile& profile, const Render& render = {});
NetDocument net_from_json(const Json& j, bool allow_decimal = false);

/// {"y_space", "g_space", "payoff": [dense ints over (g, y)], "alpha", "pg", "timeline"}
Json to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j, bool allow_decimal = false);

Json to_json(const Recommendation& r, const Render& render = {});
Json to_json(const VariantResult& v, const Render& render = {});
Json to_json(const ConsistencyReport& r, const Render& render = {});
/// {"kind": "finite", "members": [...]} or {"kind": "all"}
Json to_json(const FeasibleSet& f, const Render& render = {});
FeasibleSet feasible_from_json(const Json& j);
Json to_json(const EmpiricalStats& e, const Render& render = {});

}  // namespace newcomb
