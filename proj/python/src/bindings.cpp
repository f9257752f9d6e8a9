// Thin pybind11 layer. Values cross the boundary as JSON text with
// probabilities in "num/den" form; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "newcomb/cli.hpp"
#include "newcomb/json_io.hpp"

namespace py = pybind11;
using namespace newcomb;

namespace {

using OptStr = std::optional<std::string>;
using OptVec = std::optional<std::vector<std::string>>;

Scenario load(const std::string& scenario_json) {
  return scenario_from_json(Json::parse(scenario_json));
}

Prob alpha_or(const OptStr& alpha, const Scenario& s) { return alpha ? Prob(parse_rational(*alpha)) : s.alpha; }

Dist dist_or(const OptVec& mass, const OutcomeSpace& space, const Dist& fallback) {
  if (!mass) return fallback;
  std::vector<Rational> w;
  for (const auto& m : *mass) w.push_back(parse_rational(m));
  return make_dist(space, w);
}

std::string solve(const std::string& game, const std::string& scenario_json, const OptStr& alpha, const OptVec& pg) {
  const Scenario s = load(scenario_json);
  if (game == "fearful") return to_json(solve_fearful(s, alpha_or(alpha, s))).dump();
  if (game == "combined") return to_json(solve_combined_constrained(s, alpha_or(alpha, s))).dump();
  const Dist p = dist_or(pg, s.g_space, s.pg);
  if (game == "realist") return to_json(solve_realist(s, p)).dump();
  if (game == "variant") return to_json(solve_variant_choose_game(s, p)).dump();
  throw py::value_error("game must be fearful, realist, combined or variant");
}

std::string feasible(const std::string& scenario_json, const OptStr& alpha, std::optional<std::size_t> oracle_grid) {
  const Scenario s = load(scenario_json);
  const Prob a = alpha_or(alpha, s);
  FeasibleSet analytic = feasible_g_independent(a.value(), s.y_space);
  Json j{{"alpha", rational_json(a.value())}, {"feasible", to_json(analytic)}};
  if (oracle_grid) {
    FeasibleSet oracle = feasible_g_independent_oracle(a.value(), s.y_space, *oracle_grid);
    j["oracle"] = to_json(oracle);
    j["oracle_agrees"] = restrict_to_grid(analytic, s.y_space, *oracle_grid) == oracle.members();
  }
  return j.dump();
}

std::string consistency(const std::string& scenario_json, const OptStr& alpha, const OptVec& py_mass,
                        const OptVec& pg_mass, const OptVec& h_mass) {
  const Scenario s = load(scenario_json);
  const Dist py = dist_or(py_mass, s.y_space, uniform(s.y_space));
  const Dist pg = dist_or(pg_mass, s.g_space, s.pg);
  const Dist h = dist_or(h_mass, s.y_space, uniform(s.y_space));
  ExtendedGame xg({fearful_net(s.y_space), realist_net(s.y_space)});
  return to_json(check_profile(xg, {fearful_profile(py, alpha_accurate_cpd(alpha_or(alpha, s), s.y_space)),
                                    realist_profile(pg, h)}))
      .dump();
}

std::string consistency_nets(const std::vector<std::string>& documents) {
  std::vector<BayesNet> nets;
  std::vector<StrategyProfile> profiles;
  for (const auto& d : documents) {
    NetDocument doc = net_from_json(Json::parse(d));
    nets.push_back(std::move(doc.net));
    profiles.push_back(std::move(doc.profile));
  }
  return to_json(check_profile(ExtendedGame(std::move(nets)), profiles)).dump();
}

std::string run_simulation(const std::string& scenario_json, const std::string& net, std::uint64_t n,
                           std::uint64_t seed, const OptStr& alpha, const OptVec& py_mass, const OptVec& pg_mass,
                           const OptVec& h_mass) {
  const Scenario s = load(scenario_json);
  if (net == "fearful") {
    auto profile = fearful_profile(dist_or(py_mass, s.y_space, uniform(s.y_space)),
                                   alpha_accurate_cpd(alpha_or(alpha, s), s.y_space));
    return to_json(simulate(s, NetKind::Fearful, profile, n, seed)).dump();
  }
  if (net == "realist") {
    auto profile = realist_profile(dist_or(pg_mass, s.g_space, s.pg), dist_or(h_mass, s.y_space, uniform(s.y_space)));
    return to_json(simulate(s, NetKind::Realist, profile, n, seed)).dump();
  }
  throw py::value_error("net must be fearful or realist");
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact extended-game solvers for the two-box prediction problem";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<Error>(m, "NewcombError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Json::exception& e) {
      PyErr_SetString(PyExc_ValueError, (std::string("Parse: ") + e.what()).c_str());
    }
  });

  m.def("canonical_scenario", [] { return to_json(canonical_scenario()).dump(); });
  m.def("time_reverse", [](const std::string& s) { return to_json(time_reverse(load(s))).dump(); });
  m.def("solve", &solve, py::arg("game"), py::arg("scenario"), py::arg("alpha") = py::none(),
        py::arg("pg") = py::none());
  m.def("feasible", &feasible, py::arg("scenario"), py::arg("alpha") = py::none(),
        py::arg("oracle_grid") = py::none());
  m.def("consistency", &consistency, py::arg("scenario"), py::arg("alpha") = py::none(), py::arg("py") = py::none(),
        py::arg("pg") = py::none(), py::arg("h") = py::none());
  m.def("consistency_nets", &consistency_nets, py::arg("documents"));
  m.def("simulate", &run_simulation, py::arg("scenario"), py::arg("net"), py::arg("n"), py::arg("seed"),
        py::arg("alpha") = py::none(), py::arg("py") = py::none(), py::arg("pg") = py::none(),
        py::arg("h") = py::none());
  m.def("run_cli", &run_cli, py::arg("args"));
}
