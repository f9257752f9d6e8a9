#include <gtest/gtest.h>

#include "test_support.hpp"

namespace newcomb {
namespace {

using testing::ab;
using testing::q;
using testing::two_point;

ExtendedGame fearful_vs_realist() { return ExtendedGame({fearful_net(ab()), realist_net(ab())}); }

TEST(CheckProfile, AllDeltaBIsConsistent) {
  auto report = check_profile(fearful_vs_realist(),
                              {fearful_profile(delta(ab(), "B"), alpha_accurate_cpd(Prob(1), ab())),
                               realist_profile(delta(ab(), "B"), delta(ab(), "B"))});
  EXPECT_TRUE(report.consistent);
  EXPECT_EQ(report.discrepancy, 0);
  EXPECT_FALSE(report.witness.has_value());
  for (const auto& j : report.joints) EXPECT_EQ(j.at({1, 1}).value(), 1);
}

TEST(CheckProfile, UniformChoiceAgainstPerfectPredictor) {
  auto report = check_profile(fearful_vs_realist(),
                              {fearful_profile(uniform(ab()), alpha_accurate_cpd(Prob(1), ab())),
                               realist_profile(uniform(ab()), uniform(ab()))});
  EXPECT_FALSE(report.consistent);
  EXPECT_EQ(report.discrepancy, q(1, 4));
  const std::vector<Prob> diagonal{Prob(1, 2), Prob(0), Prob(0), Prob(1, 2)};
  const std::vector<Prob> flat(4, Prob(1, 4));
  EXPECT_EQ(report.joints[0].table(), diagonal);
  EXPECT_EQ(report.joints[1].table(), flat);
  ASSERT_TRUE(report.witness.has_value());
  EXPECT_EQ(*report.witness, (Assignment{0, 0}));  // (g=AB, y=AB)
  EXPECT_EQ(report.witness_delta, q(1, 4));
}

TEST(CheckProfile, SelfComparison) {
  auto profile = fearful_profile(make_dist(ab(), {q(1, 3), q(2, 3)}), alpha_accurate_cpd(Prob(3, 5), ab()));
  auto report = check_profile(ExtendedGame({fearful_net(ab()), fearful_net(ab())}), {profile, profile});
  EXPECT_TRUE(report.consistent);
  EXPECT_EQ(report.discrepancy, 0);
}

TEST(CheckProfile, SwappingNetsFlipsOnlyTheSign) {
  auto a = fearful_profile(uniform(ab()), alpha_accurate_cpd(Prob(9, 10), ab()));
  auto b = realist_profile(make_dist(ab(), {q(1, 5), q(4, 5)}), make_dist(ab(), {q(2, 3), q(1, 3)}));
  auto fwd = check_profile(ExtendedGame({fearful_net(ab()), realist_net(ab())}), {a, b});
  auto rev = check_profile(ExtendedGame({realist_net(ab()), fearful_net(ab())}), {b, a});
  EXPECT_EQ(fwd.consistent, rev.consistent);
  EXPECT_EQ(fwd.discrepancy, rev.discrepancy);
  EXPECT_EQ(fwd.witness, rev.witness);
  EXPECT_EQ(fwd.witness_delta, -rev.witness_delta);
}

TEST(CheckProfile, Errors) {
  OutcomeSpace other{"x", "y"};
  try {
    ExtendedGame({fearful_net(ab()), realist_net(other)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::VariableMismatch);
  }
  EXPECT_THROW(check_profile(fearful_vs_realist(), {}), Error);
}

TEST(FeasibleAnalytic, TwoDeltasAwayFromHalf) {
  const FeasibleSet deltas{std::vector<Dist>{delta(ab(), "AB"), delta(ab(), "B")}};
  EXPECT_EQ(feasible_g_independent(q(1), ab()), deltas);
  EXPECT_EQ(feasible_g_independent(q(3, 4), ab()), deltas);
  EXPECT_EQ(feasible_g_independent(q(1, 4), ab()), deltas);
  EXPECT_EQ(feasible_g_independent(q(0), ab()), deltas);
  EXPECT_TRUE(feasible_g_independent(q(1, 2), ab()).is_all());
  EXPECT_EQ(feasible_g_independent(q(1, 2), ab()).kind(), "all");
  EXPECT_EQ(deltas.kind(), "finite:2");
}

TEST(FeasibleAnalytic, OutOfRange) {
  try {
    feasible_g_independent(q(3, 2), ab());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfRange);
  }
  EXPECT_THROW(feasible_g_independent_oracle(q(-1, 2), ab(), 10), Error);
  EXPECT_THROW(feasible_g_independent_oracle(q(1, 2), ab(), 1), Error);
}

TEST(FeasibleOracle, NineTenths) {
  FeasibleSet oracle = feasible_g_independent_oracle(q(9, 10), ab(), 1000);
  // grid order: z_AB = 0 first
  EXPECT_EQ(oracle.members(), (std::vector<Dist>{delta(ab(), "B"), delta(ab(), "AB")}));
  EXPECT_EQ(restrict_to_grid(feasible_g_independent(q(9, 10), ab()), ab(), 1000), oracle.members());
}

TEST(FeasibleOracle, HalfAcceptsEveryGridPoint) {
  FeasibleSet oracle = feasible_g_independent_oracle(q(1, 2), ab(), 10);
  ASSERT_EQ(oracle.members().size(), 11u);
  for (long k = 0; k <= 10; ++k) EXPECT_EQ(oracle.members()[k], two_point(q(k, 10)));
}

TEST(FeasibleOracle, PerfectPredictorThreePoints) {
  FeasibleSet oracle = feasible_g_independent_oracle(q(1), ab(), 2);
  EXPECT_EQ(oracle.members(), (std::vector<Dist>{delta(ab(), "B"), delta(ab(), "AB")}));
  // the rejected midpoint: rows of P(y | g) are the two different deltas
  Joint mid = table2_joint(Table2Param(Prob(1), Prob(1, 2), Prob(1, 2)), ab());
  PartialCpd rows = extract_conditional(mid, kChoice, kPrediction);
  EXPECT_EQ(*rows.rows[0], delta(ab(), "AB"));
  EXPECT_EQ(*rows.rows[1], delta(ab(), "B"));
}

TEST(Table2, NormalizationEnforced) {
  EXPECT_THROW(Table2Param(Prob(1), Prob(1, 2), Prob(1, 3)), Error);
  Joint j = table2_joint(Table2Param(Prob(3, 4), Prob(1, 3), Prob(2, 3)), ab());
  EXPECT_EQ(j.at({0, 0}).value(), q(1, 4));   // a z_AB
  EXPECT_EQ(j.at({0, 1}).value(), q(1, 6));   // (1-a) z_B
  EXPECT_EQ(j.at({1, 0}).value(), q(1, 12));  // (1-a) z_AB
  EXPECT_EQ(j.at({1, 1}).value(), q(1, 2));   // a z_B
}

TEST(CrossRatio, OnlyHalfBalancesInterior) {
  for (long a = 0; a <= 40; ++a) {
    for (long z = 1; z < 40; ++z) {
      Table2Param p(Prob(q(a, 40)), Prob(q(z, 40)), Prob(q(40 - z, 40)));
      EXPECT_EQ(cross_ratio_balanced(p), a == 20) << a << "/40, z=" << z << "/40";
    }
  }
}

// Independent check of the generalized predictor form: sweep z, build the
// choice-first joint and test the rows of P(y | g) directly.
std::vector<Dist> brute_force_feasible(const Cpd& predictor, long grid) {
  std::vector<Dist> out;
  for (long k = 0; k <= grid; ++k) {
    Dist z = two_point(q(k, grid));
    Joint j = joint_from_net(fearful_net(ab()), fearful_profile(z, predictor));
    if (extract_conditional(j, kChoice, kPrediction).rows_identical()) out.push_back(z);
  }
  return out;
}

TEST(FeasibleGeneralized, IdenticalRowsAdmitEverything) {
  Dist row = make_dist(ab(), {q(1, 3), q(2, 3)});
  Cpd same = Cpd::single(ab(), {row, row});
  EXPECT_TRUE(feasible_g_independent(same).is_all());
  EXPECT_EQ(brute_force_feasible(same, 30).size(), 31u);

  Cpd same_delta = Cpd::single(ab(), {delta(ab(), "B"), delta(ab(), "B")});
  EXPECT_TRUE(feasible_g_independent(same_delta).is_all());
  EXPECT_EQ(brute_force_feasible(same_delta, 30).size(), 31u);

  Cpd skew = Cpd::single(ab(), {make_dist(ab(), {q(1, 5), q(4, 5)}), make_dist(ab(), {q(1, 2), q(1, 2)})});
  FeasibleSet f = feasible_g_independent(skew);
  EXPECT_EQ(f.kind(), "finite:2");
  EXPECT_EQ(restrict_to_grid(f, ab(), 30), brute_force_feasible(skew, 30));
}

TEST(InducedMarginal, PerfectPredictorCopiesDeltas) {
  const Cpd perfect = alpha_accurate_cpd(Prob(1), ab());
  auto ab_case = induced_prediction_marginal(delta(ab(), "AB"), perfect);
  ASSERT_TRUE(ab_case.has_value());
  EXPECT_EQ(ab_case->pg, delta(ab(), "AB"));
  auto b_case = induced_prediction_marginal(delta(ab(), "B"), perfect);
  ASSERT_TRUE(b_case.has_value());
  EXPECT_EQ(b_case->pg, delta(ab(), "B"));
  EXPECT_EQ(b_case->py, delta(ab(), "B"));
}

TEST(InducedMarginal, FullSupportHasNoSolution) {
  const Cpd perfect = alpha_accurate_cpd(Prob(1), ab());
  EXPECT_FALSE(induced_prediction_marginal(uniform(ab()), perfect).has_value());
  // exhaustive oracle: no grid P(g) makes the product equal the diagonal joint
  Joint diag = joint_from_net(fearful_net(ab()), fearful_profile(uniform(ab()), perfect)).canonical();
  for (long k = 0; k <= 100; ++k) {
    Joint prod = joint_from_net(realist_net(ab()), realist_profile(two_point(q(k, 100)), uniform(ab()))).canonical();
    EXPECT_NE(prod, diag);
  }
}

TEST(InducedMarginal, IdenticalRowsAlwaysSolvable) {
  Dist row = make_dist(ab(), {q(2, 9), q(7, 9)});
  auto r = induced_prediction_marginal(make_dist(ab(), {q(1, 3), q(2, 3)}), Cpd::single(ab(), {row, row}));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->pg, row);
}

TEST(AccuracyWitness, ThreeQuartersAgainstUniform) {
  Dist h = make_dist(ab(), {q(3, 4), q(1, 4)});
  auto w = accuracy_violation_witness(h, uniform(ab()));
  EXPECT_FALSE(w.equals_delta);
  for (const auto& row : w.g_given_y.rows) EXPECT_EQ(*row, uniform(ab()));
}

TEST(AccuracyWitness, ThreeQuartersAgainstDelta) {
  Dist h = make_dist(ab(), {q(3, 4), q(1, 4)});
  auto w = accuracy_violation_witness(h, delta(ab(), "AB"));
  EXPECT_FALSE(w.equals_delta);
  EXPECT_EQ(*w.g_given_y.rows[0], delta(ab(), "AB"));
  EXPECT_EQ(*w.g_given_y.rows[1], delta(ab(), "AB"));
}

TEST(AccuracyWitness, DegenerateCornerMatches) {
  auto w = accuracy_violation_witness(delta(ab(), "B"), delta(ab(), "B"));
  EXPECT_TRUE(w.equals_delta);
  EXPECT_FALSE(w.g_given_y.rows[0].has_value());
  EXPECT_EQ(*w.g_given_y.rows[1], delta(ab(), "B"));
}

TEST(Impossibility, AnyImperfectPredictorContradictsFreeChoice) {
  std::mt19937_64 rng(11);
  for (long a : {0L, 1L, 3L, 7L, 9L, 10L}) {
    const Prob alpha(q(a, 10));
    for (long k = 1; k < 100; ++k) {
      Dist h = two_point(q(k, 100));
      Dist py = testing::random_dist(rng, ab(), true);
      auto fearful = fearful_profile(py, alpha_accurate_cpd(alpha, ab()));
      Dist induced_pg = marginal(joint_from_net(fearful_net(ab()), fearful), kPrediction);
      auto report = check_profile(fearful_vs_realist(), {fearful, realist_profile(induced_pg, h)});
      EXPECT_FALSE(report.consistent) << "alpha=" << a << "/10 h=" << k << "/100";
    }
  }
}

}  // namespace
}  // namespace newcomb
