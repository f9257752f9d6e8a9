#include "newcomb/scenario.hpp"

#include <algorithm>

namespace newcomb {

namespace {

const OutcomeSpace& choice_labels() {
  static const OutcomeSpace space{"AB", "B"};
  return space;
}

Dist choice_row(const StrategyProfile& mine) { return mine.at(kChoice).row(0); }

Recommendation from_best_response(GameKind kind, const BestResponse& br) {
  std::vector<Dist> ties;
  for (const auto& t : br.ties) ties.push_back(choice_row(t));
  return Recommendation{kind, choice_row(br.strategy), br.value, std::move(ties)};
}

}  // namespace

const std::vector<std::string>& timeline_events() {
  static const std::vector<std::string> events{"predict", "choose"};
  return events;
}

std::string to_string(GameKind kind) {
  switch (kind) {
    case GameKind::Fearful: return "FEARFUL";
    case GameKind::Realist: return "REALIST";
    case GameKind::Combined: return "COMBINED";
    case GameKind::Variant: return "VARIANT";
  }
  return "UNKNOWN";
}

void validate(const Scenario& s) {
  if (s.y_space != s.g_space) {
    throw Error(Errc::SpaceMismatch, "choice and prediction must share the same outcome labels");
  }
  if (s.y_space.size() != 2) throw Error(Errc::UnsupportedArity, "the scenario needs exactly 2 outcomes");
  const std::vector<Variable> expected{{kPrediction, s.g_space}, {kChoice, s.y_space}};
  if (s.payoff.variables() != expected) throw Error(Errc::ShapeMismatch, "payoff must be laid out over (g, y)");
  if (s.pg.space() != s.g_space) throw Error(Errc::SpaceMismatch, "P(g) is not over the prediction space");
  auto sorted = s.timeline;
  auto events = timeline_events();
  std::sort(sorted.begin(), sorted.end());
  std::sort(events.begin(), events.end());
  if (sorted != events) throw Error(Errc::Parse, "timeline must be a permutation of {predict, choose}");
}

Scenario canonical_scenario() {
  const OutcomeSpace& space = choice_labels();
  // g = AB: y = AB -> 1000, y = B -> 0; g = B: y = AB -> 1,001,000, y = B -> 1,000,000.
  PayoffTable payoff({{kPrediction, space}, {kChoice, space}}, {1'000, 0, 1'001'000, 1'000'000});
  return Scenario{space, space, std::move(payoff), Prob::one(), uniform(space), timeline_events()};
}

Game fearful_game(const Scenario& s) {
  validate(s);
  return Game(fearful_net(s.y_space), s.payoff, kYou);
}

Game realist_game(const Scenario& s) {
  validate(s);
  return Game(realist_net(s.y_space), s.payoff, kYou);
}

Recommendation solve_fearful(const Scenario& s, const Prob& alpha) {
  const Game game = fearful_game(s);
  const StrategyProfile fixed{{kPrediction, alpha_accurate_cpd(alpha, s.y_space)}};
  return from_best_response(GameKind::Fearful, best_response(game, kYou, fixed));
}

Recommendation solve_realist(const Scenario& s, const Dist& pg) {
  const Game game = realist_game(s);
  if (pg.space() != s.g_space) throw Error(Errc::SpaceMismatch, "P(g) is not over the prediction space");
  const StrategyProfile fixed{{kPrediction, Cpd::unconditional(pg)}};
  return from_best_response(GameKind::Realist, best_response(game, kYou, fixed));
}

Recommendation solve_combined_constrained(const Scenario& s, const Prob& alpha) {
  validate(s);
  const FeasibleSet feasible = feasible_g_independent(alpha.value(), s.y_space);
  // Linear objective: over the whole simplex the optimum sits at a vertex.
  const std::vector<Dist> candidates = feasible.is_all() ? all_deltas(s.y_space) : feasible.members();
  const BayesNet net = fearful_net(s.y_space);
  const Cpd predictor = alpha_accurate_cpd(alpha, s.y_space);

  std::optional<Recommendation> best;
  for (const auto& h : candidates) {
    Rational value = expected_payoff(joint_from_net(net, fearful_profile(h, predictor)), s.payoff);
    if (!best || value > best->expected_value) {
      best = Recommendation{GameKind::Combined, h, value, {h}};
    } else if (value == best->expected_value) {
      best->tie_set.push_back(h);
    }
  }
  return *best;
}

VariantResult solve_variant_choose_game(const Scenario& s, const Dist& pg) {
  Recommendation fearful = solve_fearful(s, Prob::one());
  Recommendation realist = solve_realist(s, pg);
  VariantResult out{GameKind::Fearful, false, fearful.expected_value, realist.expected_value, fearful};
  if (realist.expected_value > fearful.expected_value) {
    out.chosen = GameKind::Realist;
    out.recommendation = realist;
  } else if (realist.expected_value == fearful.expected_value) {
    out.tie = true;
    for (const auto& d : realist.tie_set) out.recommendation.tie_set.push_back(d);
  }
  out.recommendation.game = GameKind::Variant;
  return out;
}

Scenario time_reverse(const Scenario& s) {
  Scenario out = s;
  std::reverse(out.timeline.begin(), out.timeline.end());
  return out;
}

}  // namespace newcomb
