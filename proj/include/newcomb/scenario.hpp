#pragma once

// The Newcomb instances: the Table-1 payoffs, the two single-net games, the
// combined game restricted to feasible choices, the choose-your-game
// variant, time reversal, and a seeded sampler for empirical checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newcomb/consistency.hpp"

namespace newcomb {

struct Scenario {
  OutcomeSpace y_space;
  OutcomeSpace g_space;
  PayoffTable payoff;  ///< over (g, y), row-major
  Prob alpha;          ///< predictor accuracy
  Dist pg;             ///< exogenous P(g) for the prediction-first net
  /// Event order, e.g. {"predict", "choose"}. Carried along for reporting;
  /// no computation reads it.
  std::vector<std::string> timeline;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Checks the shape invariants; throws on violation.
void validate(const Scenario& scenario);

/// Table 1: g in {AB, B} rows, y in {AB, B} columns; alpha = 1; P(g) uniform.
Scenario canonical_scenario();

/// Fixed event set every timeline must be a permutation of.
const std::vector<std::string>& timeline_events();

enum class GameKind { Fearful, Realist, Combined, Variant };
std::string to_string(GameKind kind);

struct Recommendation {
  GameKind game;
  Dist strategy;
  Rational expected_value;
  /// All equally optimal strategies, canonical pick first.
  std::vector<Dist> tie_set;

  bool tied() const { return tie_set.size() > 1; }
};

Game fearful_game(const Scenario& scenario);
Game realist_game(const Scenario& scenario);

/// Best P(y) when the predictor is fixed at the alpha-accurate table.
Recommendation solve_fearful(const Scenario& scenario, const Prob& alpha);
inline Recommendation solve_fearful(const Scenario& s) { return solve_fearful(s, s.alpha); }

/// Best parent-independent h(y) when the predictor fixes P(g).
Recommendation solve_realist(const Scenario& scenario, const Dist& pg);
inline Recommendation solve_realist(const Scenario& s) { return solve_realist(s, s.pg); }

/// Both nets at once: h is restricted to what an alpha-accurate predictor
/// leaves feasible, and each candidate is scored on its own joint.
Recommendation solve_combined_constrained(const Scenario& scenario, const Prob& alpha);
inline Recommendation solve_combined_constrained(const Scenario& s) {
  return solve_combined_constrained(s, Prob::one());
}

struct VariantResult {
  GameKind chosen;             ///< Fearful or Realist
  bool tie;
  Rational fearful_value;
  Rational realist_value;
  Recommendation recommendation;
};

/// Pick a net first, then play it. The choice-first branch uses a perfect
/// predictor; an exact tie goes to the choice-first branch.
VariantResult solve_variant_choose_game(const Scenario& scenario, const Dist& pg);

/// Reverses the timeline; everything else is unchanged.
Scenario time_reverse(const Scenario& scenario);

enum class NetKind { Fearful, Realist };

struct EmpiricalStats {
  std::uint64_t n;
  std::uint64_t seed;
  std::string generator;
  Rational mean_payoff;        ///< exact: sum of sampled payoffs / n
  double payoff_stderr;
  double accuracy;             ///< fraction of samples with g == y
  double accuracy_stderr;
  Rational analytic_mean;      ///< exact expected payoff of the joint
  Rational analytic_accuracy;  ///< exact P(g == y)
};

/// Identifies the sampler in reports.
inline constexpr const char* kGeneratorId = "mt19937_64/u53-shift/inverse-cdf";

/// Draws n i.i.d. (g, y) pairs from the chosen net's joint. Uniforms are
/// the top 53 bits of mt19937_64 scaled to [0, 1); cells are selected by
/// exact comparison against the cumulative masses in canonical cell order.
EmpiricalStats simulate(const Scenario& scenario, NetKind net, const StrategyProfile& profile, std::uint64_t n,
                        std::uint64_t seed);

}  // namespace newcomb
