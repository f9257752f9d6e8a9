#include "newcomb/json_io.hpp"

namespace newcomb {

namespace {

template <typename F>
auto parse_guard(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(Errc::Parse, std::string("missing field '") + key + "'");
  return j.at(key);
}

Json label_or_null(const Dist& d) {
  if (auto i = d.delta_index()) return d.space().label(*i);
  return nullptr;
}

}  // namespace

Json rational_json(const Rational& r, const Render& render) {
  if (render.exact) return to_string(r);
  return to_double(r);
}

Rational rational_from_json(const Json& j, bool allow_decimal) {
  if (j.is_string()) return parse_rational(j.get<std::string>(), allow_decimal);
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_float() && allow_decimal) return parse_rational(j.dump(), true);
  throw Error(Errc::Parse, "expected a \"num/den\" string, got " + j.dump());
}

Json to_json(const OutcomeSpace& space) { return space.labels(); }

OutcomeSpace space_from_json(const Json& j) {
  return parse_guard("outcome space", [&] { return OutcomeSpace(j.get<std::vector<std::string>>()); });
}

Json to_json(const Dist& d, const Render& render) {
  Json mass = Json::array();
  for (const auto& p : d.masses()) mass.push_back(rational_json(p.value(), render));
  return Json{{"space", to_json(d.space())}, {"mass", std::move(mass)}};
}

Dist dist_from_json(const Json& j, bool allow_decimal) {
  OutcomeSpace space = space_from_json(field(j, "space"));
  const Json& mass = field(j, "mass");
  if (!mass.is_array()) throw Error(Errc::Parse, "'mass' must be an array");
  std::vector<Rational> w;
  for (const auto& m : mass) w.push_back(rational_from_json(m, allow_decimal));
  return make_dist(std::move(space), w);
}

Json to_json(const Joint& joint, const Render& render) {
  Json vars = Json::array();
  for (const auto& v : joint.variables()) vars.push_back(Json{{"name", v.name}, {"space", to_json(v.space)}});
  Json table = Json::array();
  for (const auto& p : joint.table()) table.push_back(rational_json(p.value(), render));
  return Json{{"variables", std::move(vars)}, {"table", std::move(table)}};
}

Json to_json(const BayesNet& net, const StrategyProfile& profile, const Render& render) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes()) {
    Json rows = Json::array();
    if (auto it = profile.find(n.name); it != profile.end()) {
      for (const auto& r : it->second.rows()) {
        Json row = Json::array();
        for (const auto& p : r.masses()) row.push_back(rational_json(p.value(), render));
        rows.push_back(std::move(row));
      }
    }
    Json node{{"name", n.name}, {"space", to_json(n.space)}, {"parents", n.parents}, {"owner", n.owner},
              {"cpd", std::move(rows)}};
    if (n.tied_rows) node["tied"] = true;
    nodes.push_back(std::move(node));
  }
  return Json{{"nodes", std::move(nodes)}};
}

NetDocument net_from_json(const Json& j, bool allow_decimal) {
  const Json& nodes_json = field(j, "nodes");
  if (!nodes_json.is_array()) throw Error(Errc::Parse, "'nodes' must be an array");
  std::vector<NetNode> nodes;
  for (const auto& nj : nodes_json) {
    NetNode node;
    node.name = parse_guard("node name", [&] { return field(nj, "name").get<std::string>(); });
    node.space = space_from_json(field(nj, "space"));
    node.parents = parse_guard("parents", [&] {
      return nj.contains("parents") ? nj.at("parents").get<std::vector<std::string>>() : std::vector<std::string>{};
    });
    node.owner = parse_guard("owner", [&] { return field(nj, "owner").get<std::string>(); });
    node.tied_rows = parse_guard("tied", [&] { return nj.value("tied", false); });
    nodes.push_back(std::move(node));
  }
  BayesNet net(std::move(nodes));

  StrategyProfile profile;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const auto& node = net.nodes()[i];
    const Json& cpd = field(nodes_json[i], "cpd");
    if (!cpd.is_array()) throw Error(Errc::Parse, "'cpd' of '" + node.name + "' must be an array of rows");
    std::vector<Dist> rows;
    for (const auto& rj : cpd) {
      if (!rj.is_array()) throw Error(Errc::Parse, "each cpd row must be an array");
      std::vector<Rational> w;
      for (const auto& m : rj) w.push_back(rational_from_json(m, allow_decimal));
      rows.push_back(make_dist(node.space, w));
    }
    profile.emplace(node.name, Cpd(net.parent_spaces(node), node.space, std::move(rows)));
  }
  return NetDocument{std::move(net), std::move(profile)};
}

Json to_json(const Scenario& s) {
  return Json{{"y_space", to_json(s.y_space)},
              {"g_space", to_json(s.g_space)},
              {"payoff", s.payoff.dense()},
              {"alpha", to_string(s.alpha.value())},
              {"pg", to_json(s.pg)},
              {"timeline", s.timeline}};
}

Scenario scenario_from_json(const Json& j, bool allow_decimal) {
  OutcomeSpace y = space_from_json(field(j, "y_space"));
  OutcomeSpace g = space_from_json(field(j, "g_space"));
  auto dense = parse_guard("payoff", [&] { return field(j, "payoff").get<std::vector<std::int64_t>>(); });
  PayoffTable payoff({{kPrediction, g}, {kChoice, y}}, std::move(dense));
  Prob alpha(rational_from_json(field(j, "alpha"), allow_decimal));
  Dist pg = dist_from_json(field(j, "pg"), allow_decimal);
  auto timeline = parse_guard("timeline", [&] { return field(j, "timeline").get<std::vector<std::string>>(); });
  Scenario s{std::move(y), std::move(g), std::move(payoff), std::move(alpha), std::move(pg), std::move(timeline)};
  validate(s);
  return s;
}

Json to_json(const Recommendation& r, const Render& render) {
  Json ties = Json::array();
  for (const auto& d : r.tie_set) ties.push_back(to_json(d, render));
  return Json{{"game", to_string(r.game)},
              {"strategy", to_json(r.strategy, render)},
              {"strategy_label", label_or_null(r.strategy)},
              {"expected_value", rational_json(r.expected_value, render)},
              {"tie", r.tied()},
              {"tie_set", std::move(ties)}};
}

Json to_json(const VariantResult& v, const Render& render) {
  return Json{{"game", to_string(GameKind::Variant)},
              {"chosen", to_string(v.chosen)},
              {"tie", v.tie},
              {"fearful_value", rational_json(v.fearful_value, render)},
              {"realist_value", rational_json(v.realist_value, render)},
              {"recommendation", to_json(v.recommendation, render)}};
}

Json to_json(const ConsistencyReport& r, const Render& render) {
  Json names = Json::array();
  for (const auto& v : r.variables) names.push_back(v.name);
  Json witness = nullptr;
  if (r.witness) {
    witness = Json::object();
    for (std::size_t i = 0; i < r.variables.size(); ++i) {
      witness[r.variables[i].name] = r.variables[i].space.label((*r.witness)[i]);
    }
  }
  Json joints = Json::array();
  for (const auto& jt : r.joints) {
    Json table = Json::array();
    for (const auto& p : jt.table()) table.push_back(rational_json(p.value(), render));
    joints.push_back(std::move(table));
  }
  Json out{{"consistent", r.consistent},
           {"discrepancy", rational_json(r.discrepancy, render)},
           {"witness", std::move(witness)}};
  if (r.witness) {
    out["witness_nets"] = {r.witness_first, r.witness_second};
    out["witness_delta"] = rational_json(r.witness_delta, render);
  }
  out["variables"] = std::move(names);
  out["joints"] = std::move(joints);
  return out;
}

Json to_json(const FeasibleSet& f, const Render& render) {
  if (f.is_all()) return Json{{"kind", "all"}};
  Json members = Json::array();
  for (const auto& d : f.members()) members.push_back(to_json(d, render));
  return Json{{"kind", "finite"}, {"members", std::move(members)}};
}

FeasibleSet feasible_from_json(const Json& j) {
  const auto kind = parse_guard("kind", [&] { return field(j, "kind").get<std::string>(); });
  if (kind == "all") return FeasibleSet{FeasibleSet::All{}};
  if (kind != "finite") throw Error(Errc::Parse, "unknown feasible-set kind '" + kind + "'");
  std::vector<Dist> members;
  for (const auto& m : field(j, "members")) members.push_back(dist_from_json(m));
  return FeasibleSet{std::move(members)};
}

Json to_json(const EmpiricalStats& e, const Render& render) {
  return Json{{"generator", e.generator},
              {"seed", e.seed},
              {"n", e.n},
              {"mean_payoff", rational_json(e.mean_payoff, render)},
              {"mean_payoff_decimal", to_double(e.mean_payoff)},
              {"payoff_stderr", e.payoff_stderr},
              {"accuracy", e.accuracy},
              {"accuracy_stderr", e.accuracy_stderr},
              {"analytic_mean_payoff", rational_json(e.analytic_mean, render)},
              {"analytic_accuracy", rational_json(e.analytic_accuracy, render)}};
}

}  // namespace newcomb
