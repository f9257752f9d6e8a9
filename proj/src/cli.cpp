#include "newcomb/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "newcomb/json_io.hpp"

namespace newcomb::cli {

namespace {

/// Bad flags or flag combinations; maps to exit 3.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario = "canonical";
  std::string mode = "exact";
  std::optional<double> tol;
  std::optional<std::string> format;
  std::optional<std::string> output;

  // solve / simulate / consistency
  std::string game;
  std::string net;
  std::optional<std::string> alpha, pg, py, h;

  std::vector<std::string> profiles;

  std::optional<long long> oracle_grid;

  std::string param;
  long long grid = 100;
  std::optional<std::string> lo, hi;

  std::optional<long long> n;
  std::optional<std::uint64_t> seed;
};

bool exact(const Options& o) { return o.mode == "exact"; }
Render render(const Options& o) { return Render{exact(o)}; }

Rational parse_flag_rational(const std::string& text, const Options& o) {
  try {
    return parse_rational(text, !exact(o));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Dist parse_flag_dist(const std::string& text, const OutcomeSpace& space, const Options& o) {
  std::vector<Rational> w;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) w.push_back(parse_flag_rational(part, o));
  try {
    return make_dist(space, w);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Prob parse_flag_prob(const std::string& text, const Options& o) {
  try {
    return Prob(parse_flag_rational(text, o));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(Errc::Parse, "'" + path + "': " + e.what());
  }
}

Scenario load_scenario(const Options& o, int reversals) {
  Scenario s = o.scenario == "canonical" ? canonical_scenario() : scenario_from_json(read_json_file(o.scenario), !exact(o));
  for (int i = 0; i < reversals; ++i) s = time_reverse(s);
  return s;
}

void forbid(bool given, const std::string& flag, const std::string& context) {
  if (given) throw UsageError(flag + " cannot be used with " + context);
}

std::string format_of(const Options& o, const char* fallback) {
  return o.format.value_or(fallback);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string decimal(const Rational& r) {
  std::ostringstream os;
  os << std::setprecision(17) << to_double(r);
  return os.str();
}

// ---------------------------------------------------------------------------

std::string cmd_solve(const Options& o, const Scenario& s) {
  if (format_of(o, "json") != "json") throw UsageError("solve only writes JSON");
  const Render r = render(o);
  if (o.game == "fearful") {
    forbid(o.pg.has_value(), "--pg", "--game fearful");
    Prob alpha = o.alpha ? parse_flag_prob(*o.alpha, o) : s.alpha;
    return dump(to_json(solve_fearful(s, alpha), r));
  }
  if (o.game == "realist") {
    forbid(o.alpha.has_value(), "--alpha", "--game realist");
    Dist pg = o.pg ? parse_flag_dist(*o.pg, s.g_space, o) : s.pg;
    return dump(to_json(solve_realist(s, pg), r));
  }
  if (o.game == "combined") {
    forbid(o.pg.has_value(), "--pg", "--game combined");
    Prob alpha = o.alpha ? parse_flag_prob(*o.alpha, o) : s.alpha;
    return dump(to_json(solve_combined_constrained(s, alpha), r));
  }
  // variant: the choice-first branch always uses a perfect predictor
  forbid(o.alpha.has_value(), "--alpha", "--game variant");
  Dist pg = o.pg ? parse_flag_dist(*o.pg, s.g_space, o) : s.pg;
  return dump(to_json(solve_variant_choose_game(s, pg), r));
}

std::pair<std::string, int> cmd_consistency(const Options& o, const Scenario& s) {
  if (format_of(o, "json") != "json") throw UsageError("consistency only writes JSON");
  std::vector<BayesNet> nets;
  std::vector<StrategyProfile> profiles;
  if (!o.profiles.empty()) {
    if (o.profiles.size() != 2) throw UsageError("consistency takes exactly two profile files");
    forbid(o.alpha || o.pg || o.py || o.h, "--alpha/--pg/--py/--h", "profile files");
    for (const auto& path : o.profiles) {
      NetDocument doc = net_from_json(read_json_file(path), !exact(o));
      nets.push_back(std::move(doc.net));
      profiles.push_back(std::move(doc.profile));
    }
  } else {
    Prob alpha = o.alpha ? parse_flag_prob(*o.alpha, o) : s.alpha;
    Dist py = o.py ? parse_flag_dist(*o.py, s.y_space, o) : uniform(s.y_space);
    Dist pg = o.pg ? parse_flag_dist(*o.pg, s.g_space, o) : s.pg;
    Dist h = o.h ? parse_flag_dist(*o.h, s.y_space, o) : uniform(s.y_space);
    nets = {fearful_net(s.y_space), realist_net(s.y_space)};
    profiles = {fearful_profile(py, alpha_accurate_cpd(alpha, s.y_space)), realist_profile(pg, h)};
  }
  ConsistencyReport report = check_profile(ExtendedGame(std::move(nets)), profiles);
  Json j = to_json(report, render(o));
  if (!exact(o)) j["within_tolerance"] = to_double(report.discrepancy) <= *o.tol;
  return {dump(j), report.consistent ? kOk : kInconsistent};
}

std::string cmd_feasible(const Options& o, const Scenario& s) {
  if (format_of(o, "json") != "json") throw UsageError("feasible only writes JSON");
  Prob alpha = o.alpha ? parse_flag_prob(*o.alpha, o) : s.alpha;
  FeasibleSet analytic = feasible_g_independent(alpha.value(), s.y_space);
  const bool stated_range = alpha.value() > Rational(1, 2);
  Json j{{"alpha", rational_json(alpha.value(), render(o))},
         {"derived", !stated_range},
         {"feasible", to_json(analytic, render(o))}};
  if (o.oracle_grid) {
    if (*o.oracle_grid < 2) throw UsageError("--oracle-grid must be at least 2");
    const auto grid = static_cast<std::size_t>(*o.oracle_grid);
    FeasibleSet oracle = feasible_g_independent_oracle(alpha.value(), s.y_space, grid);
    j["oracle_grid"] = grid;
    j["oracle"] = to_json(oracle, render(o));
    j["oracle_agrees"] = restrict_to_grid(analytic, s.y_space, grid) == oracle.members();
  }
  return dump(j);
}

std::string cmd_sweep(const Options& o, const Scenario& s) {
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  if (o.param != "alpha" && o.param != "pgB") throw UsageError("--param must be alpha or pgB");
  const std::string fmt = format_of(o, "csv");
  if (fmt != "csv" && fmt != "json") throw UsageError("--format must be csv or json");
  const Rational lo = o.lo ? parse_flag_rational(*o.lo, o) : Rational(0);
  const Rational hi = o.hi ? parse_flag_rational(*o.hi, o) : Rational(1);
  if (lo < 0 || hi > 1 || lo >= hi) throw UsageError("sweep bounds must satisfy 0 <= lo < hi <= 1");
  const std::size_t oracle_grid = o.oracle_grid ? static_cast<std::size_t>(*o.oracle_grid) : 100;
  if (o.oracle_grid && *o.oracle_grid < 2) throw UsageError("--oracle-grid must be at least 2");

  struct Row {
    Rational param;
    std::string kind;
    bool oracle_agrees;
    Rational fearful, realist;
    std::string branch;
    bool tie;
  };
  std::vector<Row> rows;
  const auto grid = static_cast<long long>(o.grid);
  for (long long k = 0; k <= grid; ++k) {
    const Rational p = lo + (hi - lo) * Rational(k, grid);
    const Prob alpha = o.param == "alpha" ? Prob(p) : s.alpha;
    const Dist pg = o.param == "pgB" ? make_dist(s.g_space, {Rational(1) - p, p}) : s.pg;
    FeasibleSet analytic = feasible_g_independent(alpha.value(), s.y_space);
    FeasibleSet oracle = feasible_g_independent_oracle(alpha.value(), s.y_space, oracle_grid);
    const bool agrees = restrict_to_grid(analytic, s.y_space, oracle_grid) == oracle.members();

    Rational fearful = o.param == "alpha" ? solve_fearful(s, alpha).expected_value : Rational(0);
    Rational realist;
    std::string branch;
    bool tie;
    if (o.param == "pgB") {
      VariantResult v = solve_variant_choose_game(s, pg);
      fearful = v.fearful_value;
      realist = v.realist_value;
      branch = to_string(v.chosen);
      tie = v.tie;
    } else {
      realist = solve_realist(s, pg).expected_value;
      tie = fearful == realist;
      branch = to_string(realist > fearful ? GameKind::Realist : GameKind::Fearful);
    }
    rows.push_back({p, analytic.kind(), agrees, fearful, realist, branch, tie});
  }

  if (fmt == "json") {
    Json arr = Json::array();
    for (const auto& r : rows) {
      arr.push_back(Json{{"param", o.param},
                         {"value", rational_json(r.param, render(o))},
                         {"feasible_kind", r.kind},
                         {"oracle_agrees", r.oracle_agrees},
                         {"fearful_value", rational_json(r.fearful, render(o))},
                         {"realist_value", rational_json(r.realist, render(o))},
                         {"branch", r.branch},
                         {"tie", r.tie}});
    }
    return dump(arr);
  }

  std::ostringstream os;
  os << "# newcomb " << kVersion << " mode=" << o.mode << " command=sweep param=" << o.param << " grid=" << o.grid
     << " lo=" << to_string(lo) << " hi=" << to_string(hi) << " oracle_grid=" << oracle_grid << "\n";
  os << "param,param_decimal,feasible_kind,oracle_agrees,fearful_value,fearful_decimal,realist_value,"
        "realist_decimal,branch,tie\n";
  for (const auto& r : rows) {
    os << to_string(r.param) << ',' << decimal(r.param) << ',' << r.kind << ',' << (r.oracle_agrees ? 1 : 0) << ','
       << to_string(r.fearful) << ',' << decimal(r.fearful) << ',' << to_string(r.realist) << ','
       << decimal(r.realist) << ',' << r.branch << ',' << (r.tie ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string cmd_simulate(const Options& o, const Scenario& s) {
  if (format_of(o, "json") != "json") throw UsageError("simulate only writes JSON");
  if (!o.n || *o.n <= 0) throw UsageError("--n must be a positive integer");
  if (!o.seed) throw UsageError("--seed is required");
  NetKind kind;
  StrategyProfile profile;
  if (o.net == "fearful") {
    forbid(o.pg || o.h, "--pg/--h", "--net fearful");
    Prob alpha = o.alpha ? parse_flag_prob(*o.alpha, o) : s.alpha;
    Dist py = o.py ? parse_flag_dist(*o.py, s.y_space, o) : uniform(s.y_space);
    kind = NetKind::Fearful;
    profile = fearful_profile(py, alpha_accurate_cpd(alpha, s.y_space));
  } else {
    forbid(o.alpha || o.py, "--alpha/--py", "--net realist");
    Dist pg = o.pg ? parse_flag_dist(*o.pg, s.g_space, o) : s.pg;
    Dist h = o.h ? parse_flag_dist(*o.h, s.y_space, o) : uniform(s.y_space);
    kind = NetKind::Realist;
    profile = realist_profile(pg, h);
  }
  EmpiricalStats stats = simulate(s, kind, profile, static_cast<std::uint64_t>(*o.n), *o.seed);
  Json j = to_json(stats, render(o));
  j["net"] = o.net;
  return dump(j);
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (!o.output) {
    out << text;
    return;
  }
  std::filesystem::path path(*o.output);
  if (path.is_relative()) {
    if (const char* dir = std::getenv("NEWCOMB_OUTPUT_DIR"); dir && *dir) path = std::filesystem::path(dir) / path;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot write '" + path.string() + "'");
  f << text;
}

/// Position of a leading `reverse` command word, skipping global flags and
/// their values.
std::optional<std::size_t> find_reverse(const std::vector<std::string>& args) {
  static const std::vector<std::string> valued{"--scenario", "--mode", "--tol", "--format", "--output"};
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (std::find(valued.begin(), valued.end(), a) != valued.end()) {
      ++i;
      continue;
    }
    if (a.rfind("--", 0) == 0) continue;
    if (a == "reverse") return i;
    return std::nullopt;
  }
  return std::nullopt;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, int reversals) {
  // `reverse <command...>` reruns the command on the time-reversed scenario.
  // Global flags given before `reverse` still apply.
  if (auto at = find_reverse(args); at && *at + 1 < args.size()) {
    std::vector<std::string> next(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(*at));
    next.insert(next.end(), args.begin() + static_cast<std::ptrdiff_t>(*at) + 1, args.end());
    return run_impl(next, out, err, reversals + 1);
  }

  Options o;
  CLI::App app{"Extended games over Bayes nets applied to Newcomb's problem", "newcomb"};
  app.set_help_flag("--help", "print help and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.add_option("--scenario", o.scenario, "scenario JSON path, or 'canonical'");
  app.add_option("--mode", o.mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", o.tol, "display tolerance for float mode (default 1e-9)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", o.output, "write to this file (relative paths use $NEWCOMB_OUTPUT_DIR)");

  auto* solve = app.add_subcommand("solve", "best response in one of the games");
  solve->add_option("--game", o.game)->required()->check(CLI::IsMember({"fearful", "realist", "combined", "variant"}));
  solve->add_option("--alpha", o.alpha, "predictor accuracy, num/den");
  solve->add_option("--pg", o.pg, "P(g) as comma-separated num/den");

  auto* consistency = app.add_subcommand("consistency", "check whether two net profiles share one joint");
  consistency->add_option("profiles", o.profiles, "two net/profile JSON files");
  consistency->add_option("--alpha", o.alpha);
  consistency->add_option("--py", o.py, "P(y) in the choice-first net");
  consistency->add_option("--pg", o.pg, "P(g) in the prediction-first net");
  consistency->add_option("--h", o.h, "h(y) in the prediction-first net");

  auto* feasible = app.add_subcommand("feasible", "g-independent choices left by an alpha-accurate predictor");
  feasible->add_option("--alpha", o.alpha);
  feasible->add_option("--oracle-grid", o.oracle_grid, "also run the brute-force grid check");

  auto* sweep = app.add_subcommand("sweep", "tabulate values over a parameter grid");
  sweep->add_option("--param", o.param)->required();
  sweep->add_option("--grid", o.grid, "number of steps (rows = grid + 1)");
  sweep->add_option("--lo", o.lo);
  sweep->add_option("--hi", o.hi);
  sweep->add_option("--oracle-grid", o.oracle_grid);

  auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo estimate of payoff and accuracy");
  sim->add_option("--net", o.net)->required()->check(CLI::IsMember({"fearful", "realist"}));
  sim->add_option("--alpha", o.alpha);
  sim->add_option("--py", o.py);
  sim->add_option("--pg", o.pg);
  sim->add_option("--h", o.h);
  sim->add_option("--n", o.n);
  sim->add_option("--seed", o.seed);

  auto* reverse = app.add_subcommand("reverse", "reverse the timeline, then run the given command");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    if (exact(o) && o.tol) throw UsageError("--tol only applies in float mode");
    if (!exact(o)) {
      if (!o.tol) o.tol = 1e-9;
      if (!(*o.tol > 0)) throw UsageError("--tol must be positive");
    }

    Scenario s = [&] {
      try {
        return load_scenario(o, reversals + (reverse->parsed() ? 1 : 0));
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        throw Error(Errc::Parse, std::string("scenario: ") + e.what());
      }
    }();

    std::string text;
    int code = kOk;
    if (solve->parsed()) {
      text = cmd_solve(o, s);
    } else if (consistency->parsed()) {
      std::tie(text, code) = cmd_consistency(o, s);
    } else if (feasible->parsed()) {
      text = cmd_feasible(o, s);
    } else if (sweep->parsed()) {
      text = cmd_sweep(o, s);
    } else if (sim->parsed()) {
      text = cmd_simulate(o, s);
    } else {
      if (format_of(o, "json") != "json") throw UsageError("reverse only writes JSON");
      text = dump(to_json(s));
    }
    emit(o, text, out);
    return code;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run_impl(args, out, err, 0);
}

}  // namespace newcomb::cli
