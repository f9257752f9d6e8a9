#include "newcomb/netgame.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace newcomb {

namespace {

constexpr std::size_t kMaxVertices = std::size_t{1} << 22;

std::vector<std::string> names_of(const std::vector<Variable>& vars) {
  std::vector<std::string> out;
  out.reserve(vars.size());
  for (const auto& v : vars) out.push_back(v.name);
  return out;
}

}  // namespace

std::size_t assignment_count(const std::vector<Variable>& vars) {
  std::size_t n = 1;
  for (const auto& v : vars) n *= v.space.size();
  return n;
}

std::size_t flat_index(const std::vector<Variable>& vars, const Assignment& a) {
  if (a.size() != vars.size()) throw Error(Errc::ShapeMismatch, "assignment length differs from variable count");
  std::size_t index = 0;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (a[i] >= vars[i].space.size()) throw Error(Errc::UnknownOutcome, "outcome index out of range");
    index = index * vars[i].space.size() + a[i];
  }
  return index;
}

Assignment unflatten(const std::vector<Variable>& vars, std::size_t index) {
  Assignment a(vars.size());
  for (std::size_t i = vars.size(); i-- > 0;) {
    a[i] = index % vars[i].space.size();
    index /= vars[i].space.size();
  }
  return a;
}

// ---------------------------------------------------------------------------
// BayesNet

BayesNet::BayesNet(std::vector<NetNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(Errc::InvalidNet, "a net needs at least one node");
  std::set<std::string> seen;
  for (const auto& n : nodes_) {
    if (n.name.empty()) throw Error(Errc::InvalidNet, "node without a name");
    std::set<std::string> own_parents;
    for (const auto& p : n.parents) {
      if (!seen.contains(p)) {
        throw Error(Errc::InvalidNet, "parent '" + p + "' of '" + n.name +
                                          "' is not declared earlier (cycle or bad order)");
      }
      if (!own_parents.insert(p).second) throw Error(Errc::InvalidNet, "repeated parent '" + p + "'");
    }
    if (!seen.insert(n.name).second) throw Error(Errc::InvalidNet, "duplicate node '" + n.name + "'");
  }
}

std::size_t BayesNet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].name == name) return i;
  }
  throw Error(Errc::UnknownVariable, "no node '" + std::string(name) + "'");
}

bool BayesNet::has(std::string_view name) const {
  return std::any_of(nodes_.begin(), nodes_.end(), [&](const NetNode& n) { return n.name == name; });
}

std::vector<Variable> BayesNet::variables() const {
  std::vector<Variable> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back({n.name, n.space});
  return out;
}

std::vector<OutcomeSpace> BayesNet::parent_spaces(const NetNode& node) const {
  std::vector<OutcomeSpace> out;
  for (const auto& p : node.parents) out.push_back(this->node(p).space);
  return out;
}

std::vector<std::size_t> BayesNet::parent_indices(const NetNode& node) const {
  std::vector<std::size_t> out;
  for (const auto& p : node.parents) out.push_back(index_of(p));
  return out;
}

void validate_profile(const BayesNet& net, const StrategyProfile& profile) {
  for (const auto& [name, cpd] : profile) {
    if (!net.has(name)) throw Error(Errc::ProfileMismatch, "profile sets unknown node '" + name + "'");
  }
  for (const auto& node : net.nodes()) {
    auto it = profile.find(node.name);
    if (it == profile.end()) throw Error(Errc::ProfileMismatch, "profile has no table for '" + node.name + "'");
    const Cpd& cpd = it->second;
    if (cpd.target() != node.space) throw Error(Errc::ProfileMismatch, "table for '" + node.name + "' has wrong outcomes");
    if (cpd.given() != net.parent_spaces(node)) {
      throw Error(Errc::ProfileMismatch, "table for '" + node.name + "' is not conditioned on its parents");
    }
    if (node.tied_rows) {
      for (const auto& r : cpd.rows()) {
        if (!(r == cpd.row(0))) {
          throw Error(Errc::ProfileMismatch, "node '" + node.name + "' requires the same row for every parent value");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Joint / PayoffTable

Joint::Joint(std::vector<Variable> vars, std::vector<Rational> table) : vars_(std::move(vars)) {
  if (table.size() != assignment_count(vars_)) throw Error(Errc::ShapeMismatch, "joint table has the wrong size");
  std::set<std::string> names;
  for (const auto& v : vars_) {
    if (!names.insert(v.name).second) throw Error(Errc::VariableMismatch, "duplicate variable '" + v.name + "'");
  }
  Rational sum = 0;
  table_.reserve(table.size());
  for (auto& t : table) {
    if (t < 0) throw Error(Errc::NegativeMass, "negative joint cell");
    sum += t;
    table_.emplace_back(t);
  }
  if (sum != 1) throw Error(Errc::NotNormalized, "joint sums to " + to_string(sum));
}

std::size_t Joint::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return i;
  }
  throw Error(Errc::UnknownVariable, "no variable '" + std::string(name) + "'");
}

Joint Joint::reordered(const std::vector<std::string>& order) const {
  if (order.size() != vars_.size()) throw Error(Errc::VariableMismatch, "reorder needs every variable exactly once");
  std::vector<std::size_t> perm;  // perm[k] = position in *this of new variable k
  std::vector<Variable> new_vars;
  for (const auto& name : order) {
    perm.push_back(variable_index(name));
    new_vars.push_back(vars_[perm.back()]);
  }
  std::vector<std::size_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Errc::VariableMismatch, "reorder repeats a variable");
  }
  std::vector<Rational> table(table_.size());
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    Assignment a_new = unflatten(new_vars, flat);
    Assignment a_old(vars_.size());
    for (std::size_t k = 0; k < perm.size(); ++k) a_old[perm[k]] = a_new[k];
    table[flat] = at(a_old).value();
  }
  return Joint(std::move(new_vars), std::move(table));
}

Joint Joint::canonical() const {
  auto names = names_of(vars_);
  std::sort(names.begin(), names.end());
  return reordered(names);
}

PayoffTable::PayoffTable(std::vector<Variable> vars, std::vector<std::int64_t> dense)
    : vars_(std::move(vars)), payoff_(std::move(dense)) {
  if (payoff_.size() != assignment_count(vars_)) {
    throw Error(Errc::ShapeMismatch, "payoff table needs " + std::to_string(assignment_count(vars_)) + " entries, got " +
                                         std::to_string(payoff_.size()));
  }
}

Game::Game(BayesNet net_, PayoffTable payoff_, PlayerId focal_)
    : net(std::move(net_)), payoff(std::move(payoff_)), focal(std::move(focal_)) {
  auto net_vars = net.variables();
  const auto& pay_vars = payoff.variables();
  if (net_vars.size() != pay_vars.size()) throw Error(Errc::ShapeMismatch, "payoff variables differ from net variables");
  for (const auto& v : pay_vars) {
    if (!net.has(v.name) || net.node(v.name).space != v.space) {
      throw Error(Errc::ShapeMismatch, "payoff variable '" + v.name + "' does not match the net");
    }
  }
}

// ---------------------------------------------------------------------------
// Operations

Joint joint_from_net(const BayesNet& net, const StrategyProfile& profile) {
  validate_profile(net, profile);
  const auto vars = net.variables();
  const auto& nodes = net.nodes();

  std::vector<const Cpd*> tables;
  std::vector<std::vector<std::size_t>> parents;
  for (const auto& n : nodes) {
    tables.push_back(&profile.at(n.name));
    parents.push_back(net.parent_indices(n));
  }

  std::vector<Rational> table(assignment_count(vars), Rational(0));
  std::vector<std::size_t> parent_values;
  for (std::size_t flat = 0; flat < table.size(); ++flat) {
    const Assignment a = unflatten(vars, flat);
    Rational p = 1;
    for (std::size_t i = 0; i < nodes.size() && p != 0; ++i) {
      parent_values.clear();
      for (auto pi : parents[i]) parent_values.push_back(a[pi]);
      p *= tables[i]->row(parent_values).mass(a[i]).value();
    }
    table[flat] = p;
  }
  return Joint(vars, std::move(table));
}

Dist marginal(const Joint& joint, std::string_view variable) {
  const std::size_t k = joint.variable_index(variable);
  const auto& vars = joint.variables();
  std::vector<Rational> w(vars[k].space.size(), Rational(0));
  for (std::size_t flat = 0; flat < joint.table().size(); ++flat) {
    w[unflatten(vars, flat)[k]] += joint.cell(flat).value();
  }
  return make_dist(vars[k].space, w);
}

PartialCpd extract_conditional(const Joint& joint, std::string_view target, std::string_view given) {
  const std::size_t t = joint.variable_index(target);
  const std::size_t g = joint.variable_index(given);
  if (t == g) throw Error(Errc::UnknownVariable, "target and conditioning variable coincide");
  const auto& vars = joint.variables();
  const OutcomeSpace& ts = vars[t].space;
  const OutcomeSpace& gs = vars[g].space;

  std::vector<std::vector<Rational>> pair(gs.size(), std::vector<Rational>(ts.size(), Rational(0)));
  for (std::size_t flat = 0; flat < joint.table().size(); ++flat) {
    const Assignment a = unflatten(vars, flat);
    pair[a[g]][a[t]] += joint.cell(flat).value();
  }

  PartialCpd out{gs, ts, {}};
  for (auto& row : pair) {
    Rational mass = std::accumulate(row.begin(), row.end(), Rational(0));
    if (mass == 0) {
      out.rows.emplace_back(std::nullopt);
      continue;
    }
    for (auto& x : row) x /= mass;
    out.rows.emplace_back(make_dist(ts, row));
  }
  return out;
}

Rational expected_payoff(const Joint& joint, const PayoffTable& payoff) {
  const auto& jv = joint.variables();
  const auto& pv = payoff.variables();
  if (jv.size() != pv.size()) throw Error(Errc::ShapeMismatch, "payoff and joint have different variables");
  std::vector<std::size_t> pos;  // pos[k] = index in joint of payoff variable k
  for (const auto& v : pv) {
    std::size_t k;
    try {
      k = joint.variable_index(v.name);
    } catch (const Error&) {
      throw Error(Errc::ShapeMismatch, "payoff variable '" + v.name + "' missing from joint");
    }
    if (jv[k].space != v.space) throw Error(Errc::ShapeMismatch, "outcomes of '" + v.name + "' differ");
    pos.push_back(k);
  }
  Rational total = 0;
  Assignment pa(pv.size());
  for (std::size_t flat = 0; flat < joint.table().size(); ++flat) {
    const Prob& p = joint.cell(flat);
    if (p.is_zero()) continue;
    const Assignment a = unflatten(jv, flat);
    for (std::size_t k = 0; k < pos.size(); ++k) pa[k] = a[pos[k]];
    total += p.value() * payoff.at(pa);
  }
  return total;
}

Cpd deterministic_cpd(const std::vector<OutcomeSpace>& given, const OutcomeSpace& target,
                      const std::vector<std::size_t>& choice) {
  std::vector<Dist> rows;
  rows.reserve(choice.size());
  for (auto c : choice) rows.push_back(delta(target, c));
  return Cpd(given, target, std::move(rows));
}

BestResponse best_response(const Game& game, const PlayerId& player, const StrategyProfile& fixed) {
  if (player != game.focal) throw Error(Errc::NoPayoff, "player '" + player + "' receives no payoff in this game");

  struct Slot {
    const NetNode* node;
    std::vector<OutcomeSpace> given;
    std::size_t rows;        // total rows of the table
    std::size_t free_rows;   // rows the player chooses independently
  };
  std::vector<Slot> slots;
  for (const auto& n : game.net.nodes()) {
    if (n.owner == player) {
      auto given = game.net.parent_spaces(n);
      std::size_t rows = 1;
      for (const auto& g : given) rows *= g.size();
      slots.push_back({&n, std::move(given), rows, n.tied_rows ? std::size_t{1} : rows});
    } else if (!fixed.contains(n.name)) {
      throw Error(Errc::IncompleteFixed, "no fixed table for node '" + n.name + "' owned by '" + n.owner + "'");
    }
  }
  if (slots.empty()) throw Error(Errc::IncompleteFixed, "player '" + player + "' owns no node");

  // Odometer over every free row of every owned node; digit 0 is the most
  // significant so enumeration order is lexicographic in canonical order.
  std::vector<std::size_t> radix;
  std::size_t total = 1;
  for (const auto& s : slots) {
    for (std::size_t r = 0; r < s.free_rows; ++r) {
      radix.push_back(s.node->space.size());
      if (total > kMaxVertices / s.node->space.size()) throw Error(Errc::OutOfRange, "too many vertices to enumerate");
      total *= s.node->space.size();
    }
  }

  auto build = [&](const std::vector<std::size_t>& digits) {
    StrategyProfile mine;
    std::size_t d = 0;
    for (const auto& s : slots) {
      std::vector<std::size_t> choice(s.rows);
      for (std::size_t r = 0; r < s.rows; ++r) choice[r] = digits[d + (s.free_rows == 1 ? 0 : r)];
      d += s.free_rows;
      mine.emplace(s.node->name, deterministic_cpd(s.given, s.node->space, choice));
    }
    return mine;
  };

  StrategyProfile profile;
  for (const auto& n : game.net.nodes()) {
    if (n.owner != player) profile.emplace(n.name, fixed.at(n.name));
  }

  BestResponse best;
  bool have = false;
  std::vector<std::size_t> digits(radix.size(), 0);
  for (std::size_t v = 0; v < total; ++v) {
    StrategyProfile mine = build(digits);
    for (auto& [name, cpd] : mine) profile.insert_or_assign(name, cpd);
    Rational value = expected_payoff(joint_from_net(game.net, profile), game.payoff);
    if (!have || value > best.value) {
      best.value = value;
      best.ties.clear();
      best.ties.push_back(mine);
      have = true;
    } else if (value == best.value) {
      best.ties.push_back(mine);
    }
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < radix[i]) break;
      digits[i] = 0;
    }
  }
  best.strategy = best.ties.front();
  return best;
}

}  // namespace newcomb
