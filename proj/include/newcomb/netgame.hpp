#pragma once

// Games over Bayes nets: each player sets the conditional distributions at
// the nodes it owns, and the joint over all variables is the chain-rule
// product of those tables.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "newcomb/prob.hpp"

namespace newcomb {

using PlayerId = std::string;

struct Variable {
  std::string name;
  OutcomeSpace space;

  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Full assignment: one outcome index per variable, in the owner's variable order.
using Assignment = std::vector<std::size_t>;

std::size_t assignment_count(const std::vector<Variable>& vars);
/// Row-major: the first variable is the most significant digit.
std::size_t flat_index(const std::vector<Variable>& vars, const Assignment& a);
Assignment unflatten(const std::vector<Variable>& vars, std::size_t index);

struct NetNode {
  std::string name;
  OutcomeSpace space;
  std::vector<std::string> parents;
  PlayerId owner;
  /// The owner picks one distribution that is used for every parent value
  /// (a conditional that does not depend on its parents).
  bool tied_rows = false;
};

class BayesNet {
 public:
  /// Nodes must already be in topological order: every parent is declared
  /// before its children.
  explicit BayesNet(std::vector<NetNode> nodes);

  const std::vector<NetNode>& nodes() const noexcept { return nodes_; }
  const NetNode& node(std::string_view name) const { return nodes_.at(index_of(name)); }
  std::size_t index_of(std::string_view name) const;
  bool has(std::string_view name) const;

  std::vector<Variable> variables() const;
  std::vector<OutcomeSpace> parent_spaces(const NetNode& node) const;
  std::vector<std::size_t> parent_indices(const NetNode& node) const;

 private:
  std::vector<NetNode> nodes_;
};

/// One conditional table per node, keyed by node name.
using StrategyProfile = std::map<std::string, Cpd>;

/// Throws ProfileMismatch unless `profile` has a correctly shaped table for
/// every node of `net`. Extra entries are rejected as well.
void validate_profile(const BayesNet& net, const StrategyProfile& profile);

class Joint {
 public:
  Joint(std::vector<Variable> vars, std::vector<Rational> table);

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<Prob>& table() const noexcept { return table_; }
  const Prob& at(const Assignment& a) const { return table_.at(flat_index(vars_, a)); }
  const Prob& cell(std::size_t flat) const { return table_.at(flat); }
  std::size_t variable_index(std::string_view name) const;

  /// Same distribution with variables permuted into `order` (matched by name).
  Joint reordered(const std::vector<std::string>& order) const;
  /// Variables sorted by name; the order used for cross-net comparison.
  Joint canonical() const;

  friend bool operator==(const Joint&, const Joint&) = default;

 private:
  std::vector<Variable> vars_;
  std::vector<Prob> table_;
};

class PayoffTable {
 public:
  PayoffTable(std::vector<Variable> vars, std::vector<std::int64_t> dense);

  const std::vector<Variable>& variables() const noexcept { return vars_; }
  const std::vector<std::int64_t>& dense() const noexcept { return payoff_; }
  std::int64_t at(const Assignment& a) const { return payoff_.at(flat_index(vars_, a)); }

  friend bool operator==(const PayoffTable&, const PayoffTable&) = default;

 private:
  std::vector<Variable> vars_;
  std::vector<std::int64_t> payoff_;
};

struct Game {
  Game(BayesNet net, PayoffTable payoff, PlayerId focal);

  BayesNet net;
  PayoffTable payoff;
  PlayerId focal;  ///< the player who receives `payoff`
};

/// Chain-rule product of the node tables. A cell whose upstream mass is zero
/// is zero whatever the conditional row says.
Joint joint_from_net(const BayesNet& net, const StrategyProfile& profile);

Dist marginal(const Joint& joint, std::string_view variable);

/// P(target | given) read off a joint; rows with zero conditioning mass are
/// undefined rather than filled in.
PartialCpd extract_conditional(const Joint& joint, std::string_view target, std::string_view given);

/// Exact sum of probability times payoff. Variables are matched by name, so
/// the payoff table may list them in any order.
Rational expected_payoff(const Joint& joint, const PayoffTable& payoff);

struct BestResponse {
  StrategyProfile strategy;               ///< the player's tables only
  Rational value;                         ///< exact expected payoff
  std::vector<StrategyProfile> ties;      ///< every optimal vertex, canonical pick first
};

/// Expected payoff is linear in each row of the player's tables, so the
/// optimum is attained at a deterministic table. All deterministic tables are
/// enumerated in canonical order; the first maximizer wins ties.
BestResponse best_response(const Game& game, const PlayerId& player, const StrategyProfile& fixed);

/// Deterministic table that picks `choice[r]` in row r.
Cpd deterministic_cpd(const std::vector<OutcomeSpace>& given, const OutcomeSpace& target,
                      const std::vector<std::size_t>& choice);

}  // namespace newcomb
