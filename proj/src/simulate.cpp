#include <cmath>
#include <random>

#include "newcomb/scenario.hpp"

namespace newcomb {

namespace {

constexpr int kUniformBits = 53;

}  // namespace

EmpiricalStats simulate(const Scenario& s, NetKind kind, const StrategyProfile& profile, std::uint64_t n,
                        std::uint64_t seed) {
  validate(s);
  if (n == 0) throw Error(Errc::OutOfRange, "sample count must be positive");

  const BayesNet net = kind == NetKind::Fearful ? fearful_net(s.y_space) : realist_net(s.y_space);
  Joint joint = [&] {
    try {
      return joint_from_net(net, profile).canonical();
    } catch (const Error& e) {
      throw Error(Errc::InvalidProfile, e.what());
    }
  }();

  const auto& vars = joint.variables();
  const std::size_t cells = joint.table().size();
  const std::size_t g_pos = joint.variable_index(kPrediction);
  const std::size_t y_pos = joint.variable_index(kChoice);

  // Cell i is drawn when k < threshold[i] for the first such i, where the
  // uniform is k / 2^53. threshold[i] = ceil(cumulative_i * 2^53) makes that
  // comparison exact.
  const Integer scale = Integer(1) << kUniformBits;
  std::vector<std::uint64_t> threshold(cells);
  std::vector<std::int64_t> payoff(cells);
  std::vector<bool> hit(cells);
  Rational cumulative = 0;
  Rational analytic_accuracy = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    cumulative += joint.cell(i).value();
    Rational scaled = cumulative * scale;
    Integer t = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
    if (t * boost::multiprecision::denominator(scaled) != boost::multiprecision::numerator(scaled)) t += 1;
    threshold[i] = t.convert_to<std::uint64_t>();

    const Assignment a = unflatten(vars, i);
    Assignment pa(s.payoff.variables().size());
    for (std::size_t k = 0; k < pa.size(); ++k) pa[k] = a[joint.variable_index(s.payoff.variables()[k].name)];
    payoff[i] = s.payoff.at(pa);
    hit[i] = s.g_space.label(a[g_pos]) == s.y_space.label(a[y_pos]);
    if (hit[i]) analytic_accuracy += joint.cell(i).value();
  }

  std::mt19937_64 gen(seed);
  std::vector<std::uint64_t> counts(cells, 0);
  for (std::uint64_t draw = 0; draw < n; ++draw) {
    const std::uint64_t k = gen() >> (64 - kUniformBits);
    std::size_t i = 0;
    while (i + 1 < cells && k >= threshold[i]) ++i;
    ++counts[i];
  }

  Integer payoff_sum = 0;
  std::uint64_t matches = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    payoff_sum += Integer(counts[i]) * payoff[i];
    if (hit[i]) matches += counts[i];
  }
  const Rational mean(payoff_sum, Integer(n));

  double payoff_stderr = 0.0;
  if (n > 1) {
    Rational ss = 0;
    for (std::size_t i = 0; i < cells; ++i) {
      if (counts[i] == 0) continue;
      Rational d = Rational(payoff[i]) - mean;
      ss += d * d * Integer(counts[i]);
    }
    const Rational var = ss / Integer(n - 1);
    payoff_stderr = std::sqrt(to_double(var) / static_cast<double>(n));
  }
  const double accuracy = static_cast<double>(matches) / static_cast<double>(n);
  const double accuracy_stderr = std::sqrt(accuracy * (1.0 - accuracy) / static_cast<double>(n));

  return EmpiricalStats{n,
                        seed,
                        kGeneratorId,
                        mean,
                        payoff_stderr,
                        accuracy,
                        accuracy_stderr,
                        expected_payoff(joint, s.payoff),
                        analytic_accuracy};
}

}  // namespace newcomb
