#pragma once

// Cross-net consistency for extended games.
//
// An extended game lets players set tables in several Bayes nets over the
// same variables at once. A joint strategy profile is only possible if every
// net ends up with the same joint distribution; this module decides that
// exactly and, for the two-outcome prediction game, characterizes which
// parent-independent choices survive an alpha-accurate predictor.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "newcomb/netgame.hpp"

namespace newcomb {

/// Variable names used by the two-variable prediction game.
inline constexpr const char* kChoice = "y";
inline constexpr const char* kPrediction = "g";
inline constexpr const char* kYou = "you";
inline constexpr const char* kPredictor = "W";

/// y is the parent and the predictor sets P(g | y).
BayesNet fearful_net(const OutcomeSpace& space);
/// g is the parent and you set a single h(y) used for every g.
BayesNet realist_net(const OutcomeSpace& space);

StrategyProfile fearful_profile(const Dist& py, const Cpd& predictor);
StrategyProfile realist_profile(const Dist& pg, const Dist& h);

class ExtendedGame {
 public:
  /// All nets must range over the same variables with the same outcomes.
  explicit ExtendedGame(std::vector<BayesNet> nets);

  const std::vector<BayesNet>& nets() const noexcept { return nets_; }
  /// Variables sorted by name.
  const std::vector<Variable>& variables() const noexcept { return vars_; }

 private:
  std::vector<BayesNet> nets_;
  std::vector<Variable> vars_;
};

struct ConsistencyReport {
  bool consistent = true;
  Rational discrepancy;                  ///< max |P_i(cell) - P_j(cell)| over net pairs
  std::optional<Assignment> witness;     ///< first maximizing cell, canonical order
  std::size_t witness_first = 0;         ///< nets compared at the witness
  std::size_t witness_second = 1;
  Rational witness_delta;                ///< P_first(witness) - P_second(witness)
  std::vector<Variable> variables;       ///< canonical (name-sorted) order
  std::vector<Joint> joints;             ///< one per net, canonical order
};

ConsistencyReport check_profile(const ExtendedGame& xgame, const std::vector<StrategyProfile>& profiles);

/// Set of parent-independent conditionals h. Either an explicit list or the
/// whole simplex.
struct FeasibleSet {
  struct All {
    friend bool operator==(const All&, const All&) = default;
  };
  std::variant<std::vector<Dist>, All> value;

  bool is_all() const { return std::holds_alternative<All>(value); }
  const std::vector<Dist>& members() const { return std::get<std::vector<Dist>>(value); }
  /// "all" or "finite:<count>".
  std::string kind() const;
  bool contains(const Dist& h) const;

  friend bool operator==(const FeasibleSet&, const FeasibleSet&) = default;
};

/// Two-outcome parametrization of every joint whose P(g | y) is the
/// alpha-accurate predictor: cell (g, y) = P(g | y) * z_y.
struct Table2Param {
  Table2Param(Prob alpha, Prob z_first, Prob z_second);

  Prob alpha;
  Prob z_first;   ///< z for the first outcome (AB in the canonical scenario)
  Prob z_second;  ///< z for the second outcome (B)
};

/// Joint over {g, y} (canonical order) built directly from the cell formulas.
Joint table2_joint(const Table2Param& param, const OutcomeSpace& space);

/// Equal-ratio condition for P(y | g) to agree on both predictions, in
/// cross-multiplied form: a z0 * a z1 == (1 - a) z0 * (1 - a) z1.
bool cross_ratio_balanced(const Table2Param& param);

/// The g-independent P(y | g) compatible with an alpha-accurate predictor.
/// Any alpha other than 1/2 leaves only the two deltas; alpha = 1/2 makes
/// the predictor uninformative and admits every h.
FeasibleSet feasible_g_independent(const Rational& alpha, const OutcomeSpace& space);

/// Generalization to an arbitrary 2x2 predictor table w(g | y): interior z
/// survives iff w(g1|y1) w(g2|y2) == w(g2|y1) w(g1|y2), which for
/// normalized rows means the two rows coincide.
FeasibleSet feasible_g_independent(const Cpd& predictor);

/// Brute-force check of the above: sweeps z_first over {0, 1/grid, ..., 1},
/// builds each joint, extracts P(y | g) and keeps the rows that are
/// g-independent. Always returns an explicit list in grid order.
FeasibleSet feasible_g_independent_oracle(const Rational& alpha, const OutcomeSpace& space, std::size_t grid);

/// Grid points of `set` along the 2-simplex, in grid order.
std::vector<Dist> restrict_to_grid(const FeasibleSet& set, const OutcomeSpace& space, std::size_t grid);

struct InducedMarginal {
  Dist pg;  ///< P(g) forced on the prediction side
  Dist py;  ///< P(y), which equals h
};

/// Given your parent-independent h(y) and the predictor table w(g | y),
/// finds the P(g) for which the product h(y) P(g) equals a joint built from
/// w. Returns nullopt when no P(g) works.
std::optional<InducedMarginal> induced_prediction_marginal(const Dist& h, const Cpd& predictor);

struct AccuracyWitness {
  PartialCpd g_given_y;  ///< P(g | y) of the product joint h(y) pg(g)
  bool equals_delta;     ///< every defined row is the delta at g = y
};

/// Shows how setting h changes the predictor's accuracy: builds h(y) pg(g),
/// reads off P(g | y) and compares it against the perfect predictor.
AccuracyWitness accuracy_violation_witness(const Dist& h, const Dist& pg);

}  // namespace newcomb
