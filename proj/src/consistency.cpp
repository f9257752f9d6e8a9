#include "newcomb/consistency.hpp"

#include <algorithm>

namespace newcomb {

namespace {

std::vector<Variable> sorted_variables(const BayesNet& net) {
  auto vars = net.variables();
  std::sort(vars.begin(), vars.end(), [](const Variable& a, const Variable& b) { return a.name < b.name; });
  return vars;
}

void require_binary(const OutcomeSpace& space) {
  if (space.size() != 2) throw Error(Errc::UnsupportedArity, "the prediction game needs exactly 2 outcomes");
}

Prob checked_alpha(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw Error(Errc::OutOfRange, "alpha " + to_string(alpha) + " is not in [0, 1]");
  return Prob(alpha);
}

Dist grid_point(const OutcomeSpace& space, std::size_t k, std::size_t grid) {
  Rational z(static_cast<long>(k), static_cast<long>(grid));
  return make_dist(space, {z, Rational(1) - z});
}

}  // namespace

BayesNet fearful_net(const OutcomeSpace& space) {
  return BayesNet({
      NetNode{kChoice, space, {}, kYou, false},
      NetNode{kPrediction, space, {kChoice}, kPredictor, false},
  });
}

BayesNet realist_net(const OutcomeSpace& space) {
  return BayesNet({
      NetNode{kPrediction, space, {}, kPredictor, false},
      NetNode{kChoice, space, {kPrediction}, kYou, true},
  });
}

StrategyProfile fearful_profile(const Dist& py, const Cpd& predictor) {
  return {{kChoice, Cpd::unconditional(py)}, {kPrediction, predictor}};
}

StrategyProfile realist_profile(const Dist& pg, const Dist& h) {
  std::vector<Dist> rows(pg.size(), h);
  return {{kPrediction, Cpd::unconditional(pg)}, {kChoice, Cpd::single(pg.space(), std::move(rows))}};
}

// ---------------------------------------------------------------------------

ExtendedGame::ExtendedGame(std::vector<BayesNet> nets) : nets_(std::move(nets)) {
  if (nets_.empty()) throw Error(Errc::VariableMismatch, "an extended game needs at least one net");
  vars_ = sorted_variables(nets_.front());
  for (std::size_t i = 1; i < nets_.size(); ++i) {
    if (sorted_variables(nets_[i]) != vars_) {
      throw Error(Errc::VariableMismatch, "net " + std::to_string(i) + " ranges over different variables");
    }
  }
}

ConsistencyReport check_profile(const ExtendedGame& xgame, const std::vector<StrategyProfile>& profiles) {
  const auto& nets = xgame.nets();
  if (profiles.size() != nets.size()) {
    throw Error(Errc::VariableMismatch, "need one profile per net (" + std::to_string(nets.size()) + "), got " +
                                            std::to_string(profiles.size()));
  }

  ConsistencyReport report;
  report.variables = xgame.variables();
  for (std::size_t i = 0; i < nets.size(); ++i) {
    report.joints.push_back(joint_from_net(nets[i], profiles[i]).canonical());
  }

  report.discrepancy = 0;
  report.witness_delta = 0;
  const std::size_t cells = assignment_count(report.variables);
  for (std::size_t flat = 0; flat < cells; ++flat) {
    for (std::size_t i = 0; i < report.joints.size(); ++i) {
      for (std::size_t j = i + 1; j < report.joints.size(); ++j) {
        Rational diff = report.joints[i].cell(flat).value() - report.joints[j].cell(flat).value();
        if (abs(diff) > report.discrepancy) {
          report.discrepancy = abs(diff);
          report.witness = unflatten(report.variables, flat);
          report.witness_first = i;
          report.witness_second = j;
          report.witness_delta = diff;
        }
      }
    }
  }
  report.consistent = report.discrepancy == 0;
  return report;
}

// ---------------------------------------------------------------------------

std::string FeasibleSet::kind() const {
  return is_all() ? std::string("all") : "finite:" + std::to_string(members().size());
}

bool FeasibleSet::contains(const Dist& h) const {
  if (is_all()) return true;
  const auto& m = members();
  return std::find(m.begin(), m.end(), h) != m.end();
}

Table2Param::Table2Param(Prob alpha_, Prob z_first_, Prob z_second_)
    : alpha(std::move(alpha_)), z_first(std::move(z_first_)), z_second(std::move(z_second_)) {
  if (z_first.value() + z_second.value() != 1) {
    throw Error(Errc::NotNormalized, "z_first + z_second = " + to_string(z_first.value() + z_second.value()));
  }
}

Joint table2_joint(const Table2Param& param, const OutcomeSpace& space) {
  require_binary(space);
  const Rational& a = param.alpha.value();
  const Rational& z0 = param.z_first.value();
  const Rational& z1 = param.z_second.value();
  // Rows g, columns y:  g=first: a z0, (1-a) z1;  g=second: (1-a) z0, a z1.
  std::vector<Rational> cells{a * z0, (1 - a) * z1, (1 - a) * z0, a * z1};
  return Joint({{kPrediction, space}, {kChoice, space}}, std::move(cells));
}

bool cross_ratio_balanced(const Table2Param& param) {
  const Rational& a = param.alpha.value();
  const Rational& z0 = param.z_first.value();
  const Rational& z1 = param.z_second.value();
  return (a * z0) * (a * z1) == ((1 - a) * z0) * ((1 - a) * z1);
}

FeasibleSet feasible_g_independent(const Cpd& predictor) {
  if (predictor.given().size() != 1 || predictor.given().front() != predictor.target()) {
    throw Error(Errc::ShapeMismatch, "predictor must be a table P(g | y) over one shared outcome space");
  }
  const OutcomeSpace& space = predictor.target();
  require_binary(space);
  // w[y][g] = P(g | y). With z_first, z_second both nonzero, g-independence
  // of P(y | g) is the cross-multiplied ratio condition below; the common
  // factor z_first * z_second is nonzero and drops out.
  const Rational& w00 = predictor.row(0).mass(0).value();
  const Rational& w01 = predictor.row(0).mass(1).value();
  const Rational& w10 = predictor.row(1).mass(0).value();
  const Rational& w11 = predictor.row(1).mass(1).value();
  if (w00 * w11 == w01 * w10) return FeasibleSet{FeasibleSet::All{}};
  // With z on the boundary only one column is populated and P(y | g) is the
  // same delta on every defined row.
  return FeasibleSet{all_deltas(space)};
}

FeasibleSet feasible_g_independent(const Rational& alpha, const OutcomeSpace& space) {
  require_binary(space);
  return feasible_g_independent(alpha_accurate_cpd(checked_alpha(alpha), space));
}

FeasibleSet feasible_g_independent_oracle(const Rational& alpha, const OutcomeSpace& space, std::size_t grid) {
  if (grid < 2) throw Error(Errc::OutOfRange, "oracle grid must be at least 2");
  require_binary(space);
  const Prob a = checked_alpha(alpha);
  std::vector<Dist> members;
  for (std::size_t k = 0; k <= grid; ++k) {
    Rational z(static_cast<long>(k), static_cast<long>(grid));
    const Joint joint = table2_joint(Table2Param(a, z, Rational(1) - z), space);
    const PartialCpd y_given_g = extract_conditional(joint, kChoice, kPrediction);
    if (!y_given_g.rows_identical()) continue;
    for (const auto& row : y_given_g.rows) {
      if (row) {
        members.push_back(*row);
        break;
      }
    }
  }
  return FeasibleSet{std::move(members)};
}

std::vector<Dist> restrict_to_grid(const FeasibleSet& set, const OutcomeSpace& space, std::size_t grid) {
  if (grid < 1) throw Error(Errc::OutOfRange, "grid must be positive");
  require_binary(space);
  std::vector<Dist> out;
  for (std::size_t k = 0; k <= grid; ++k) {
    Dist h = grid_point(space, k, grid);
    if (set.contains(h)) out.push_back(std::move(h));
  }
  return out;
}

std::optional<InducedMarginal> induced_prediction_marginal(const Dist& h, const Cpd& predictor) {
  if (predictor.given().size() != 1 || predictor.given().front() != h.space()) {
    throw Error(Errc::ShapeMismatch, "predictor must be conditioned on the choice space");
  }
  const OutcomeSpace& space = h.space();
  if (predictor.target() != space) throw Error(Errc::ShapeMismatch, "predictor outcomes differ from choice outcomes");

  // Any match must share the y marginal, so P(y) = h; the only candidate for
  // P(g) is then the g marginal of that joint.
  const Joint fearful = joint_from_net(fearful_net(space), fearful_profile(h, predictor));
  Dist pg = marginal(fearful, kPrediction);
  const Joint realist = joint_from_net(realist_net(space), realist_profile(pg, h));
  if (realist.canonical() != fearful.canonical()) return std::nullopt;
  return InducedMarginal{std::move(pg), h};
}

AccuracyWitness accuracy_violation_witness(const Dist& h, const Dist& pg) {
  if (h.space() != pg.space()) throw Error(Errc::ShapeMismatch, "h and P(g) must share an outcome space");
  const Joint joint = joint_from_net(realist_net(h.space()), realist_profile(pg, h));
  AccuracyWitness out{extract_conditional(joint, kPrediction, kChoice), true};
  for (std::size_t y = 0; y < out.g_given_y.rows.size(); ++y) {
    const auto& row = out.g_given_y.rows[y];
    if (row && !(*row == delta(pg.space(), y))) out.equals_delta = false;
  }
  return out;
}

}  // namespace newcomb
