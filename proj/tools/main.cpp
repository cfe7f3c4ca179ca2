#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minclaim/csv.hpp"
#include "minclaim/errors.hpp"
#include "minclaim/examples.hpp"
#include "minclaim/json_io.hpp"
#include "minclaim/orders.hpp"
#include "minclaim/portfolio.hpp"
#include "minclaim/sampler.hpp"

namespace {

using nlohmann::json;
using namespace minclaim;

constexpr double kSandwichTol = 1e-10;
constexpr int kReproduceSamples = 1000000;
constexpr std::uint64_t kReproduceSeed = 12345;

struct GridSpec {
  double x_max = 0.0;
  int n_points = 201;
};

struct RunConfig {
  std::string command;
  std::string portfolio_path;
  std::string a_path;
  std::string b_path;
  json portfolio_node;  // inline portfolio from a config file
  json a_node;
  json b_node;
  std::string grid_text;
  std::string method_text;
  std::string relation_text;
  long long n = 100000;
  std::uint64_t seed = 42;
  std::string out_path;
  std::string config_path;
  bool force = false;
  int example = 0;
};

GridSpec parse_grid(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw ParseError("grid must look like X_MAX:N, got: " + text);
  }
  GridSpec g;
  try {
    std::size_t used = 0;
    std::string head = text.substr(0, colon);
    g.x_max = std::stod(head, &used);
    if (used != head.size()) throw std::invalid_argument("grid");
    std::string tail = text.substr(colon + 1);
    g.n_points = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("grid");
  } catch (const std::exception&) {
    throw ParseError("grid must look like X_MAX:N, got: " + text);
  }
  if (!(g.x_max > 0.0) || g.n_points < 2) {
    throw ParseError("grid needs x_max > 0 and at least 2 points, got: " +
                     text);
  }
  return g;
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in " + what + ": " + e.what());
  }
}

// Config file values fill in whatever the command line left unset.
void merge_config(RunConfig& rc, CLI::App* sub) {
  if (rc.config_path.empty()) return;
  json cfg = parse_json_text(read_text_file(rc.config_path), rc.config_path);
  if (!cfg.is_object()) throw ParseError("config must be a JSON object");
  auto unset = [&](const char* flag) {
    auto* opt = sub->get_option_no_throw(flag);
    return opt != nullptr && opt->count() == 0;
  };
  auto text_field = [&](const char* key) {
    if (!cfg[key].is_string()) {
      throw ParseError(std::string("config field ") + key +
                       " must be a string");
    }
    return cfg[key].get<std::string>();
  };
  auto spec_field = [&](const char* key, std::string& path, json& node) {
    if (cfg[key].is_string()) {
      path = cfg[key].get<std::string>();
    } else if (cfg[key].is_object()) {
      node = cfg[key];
    } else {
      throw ParseError(std::string("config field ") + key +
                       " must be a file path or portfolio object");
    }
  };
  if (cfg.contains("portfolio") && unset("--portfolio")) {
    spec_field("portfolio", rc.portfolio_path, rc.portfolio_node);
  }
  if (cfg.contains("a") && unset("--a")) spec_field("a", rc.a_path, rc.a_node);
  if (cfg.contains("b") && unset("--b")) spec_field("b", rc.b_path, rc.b_node);
  if (cfg.contains("grid") && unset("--grid")) rc.grid_text = text_field("grid");
  if (cfg.contains("method") && unset("--method")) {
    rc.method_text = text_field("method");
  }
  if (cfg.contains("relation") && unset("--relation")) {
    rc.relation_text = text_field("relation");
  }
  if (cfg.contains("out") && unset("--out")) rc.out_path = text_field("out");
  if (cfg.contains("n") && unset("--n")) {
    if (!cfg["n"].is_number_integer()) {
      throw ParseError("config field n must be an integer");
    }
    rc.n = cfg["n"].get<long long>();
  }
  if (cfg.contains("seed") && unset("--seed")) {
    if (!cfg["seed"].is_number_integer()) {
      throw ParseError("config field seed must be an integer");
    }
    rc.seed = cfg["seed"].get<std::uint64_t>();
  }
  if (cfg.contains("force") && unset("--force")) {
    if (!cfg["force"].is_boolean()) {
      throw ParseError("config field force must be a boolean");
    }
    rc.force = cfg["force"].get<bool>();
  }
}

Portfolio load_portfolio(const std::string& path, const json& inline_node,
                         const char* what, json& desc) {
  if (!path.empty()) {
    desc = path;
    return portfolio_from_json(read_text_file(path));
  }
  if (inline_node.is_object()) {
    desc = inline_node;
    return portfolio_from_json(inline_node.dump());
  }
  throw ParseError(std::string("no portfolio given; use --") + what +
                   " or a config file");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text_file(out_path, text);
  }
}

// The resolved configuration is echoed next to the output file so a run can
// be reproduced from its artifacts alone.
void write_run_sidecar(const RunConfig& rc, const GridSpec* grid,
                       const json& extras) {
  if (rc.out_path.empty()) return;
  json run;
  run["command"] = rc.command;
  run["out"] = rc.out_path;
  if (grid != nullptr) {
    run["grid"] = {{"x_max", grid->x_max}, {"n_points", grid->n_points}};
  }
  for (const auto& item : extras.items()) run[item.key()] = item.value();
  write_text_file(rc.out_path + ".run.json", run.dump(2) + "\n");
}

GridSpec resolve_grid(const RunConfig& rc, double fallback_x_max) {
  if (!rc.grid_text.empty()) return parse_grid(rc.grid_text);
  return GridSpec{fallback_x_max, 201};
}

int cmd_survival(RunConfig& rc) {
  json desc;
  Portfolio pf =
      load_portfolio(rc.portfolio_path, rc.portfolio_node, "portfolio", desc);
  GridSpec g = resolve_grid(rc, choose_x_max(pf));
  SurvivalCurve curve = survival_curve(pf, linspace(0.0, g.x_max, g.n_points));
  emit(survival_csv(curve), rc.out_path);
  write_run_sidecar(rc, &g,
                    {{"portfolio", desc},
                     {"fingerprint", portfolio_fingerprint(pf)}});
  return 0;
}

int cmd_bounds(RunConfig& rc) {
  if (rc.method_text.empty()) throw ParseError("bounds requires --method");
  BoundsMethod method = method_from_name(rc.method_text);
  json desc;
  Portfolio pf =
      load_portfolio(rc.portfolio_path, rc.portfolio_node, "portfolio", desc);
  GridSpec g = resolve_grid(rc, choose_x_max(pf));
  std::vector<double> xs = linspace(0.0, g.x_max, g.n_points);
  BoundsOptions opts;
  opts.force = rc.force;
  BoundsCurve bounds = bounds_curve(pf, xs, method, opts);
  SurvivalCurve exact = survival_curve(pf, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (bounds.lower[i] > exact.values[i] + kSandwichTol ||
        exact.values[i] > bounds.upper[i] + kSandwichTol) {
      std::fprintf(stderr,
                   "error: bound fails to sandwich the exact curve at "
                   "x=%.17g (lower=%.17g exact=%.17g upper=%.17g)\n",
                   xs[i], bounds.lower[i], exact.values[i], bounds.upper[i]);
      return 3;
    }
  }
  emit(bounds_csv(exact, bounds), rc.out_path);
  write_run_sidecar(rc, &g,
                    {{"portfolio", desc},
                     {"fingerprint", portfolio_fingerprint(pf)},
                     {"method", method_name(method)},
                     {"force", rc.force},
                     {"premises_verified", bounds.premises_verified}});
  return 0;
}

int cmd_compare(RunConfig& rc) {
  if (rc.relation_text.empty()) throw ParseError("compare requires --relation");
  OrderRelation relation = relation_from_name(rc.relation_text);
  json desc_a;
  json desc_b;
  Portfolio a = load_portfolio(rc.a_path, rc.a_node, "a", desc_a);
  Portfolio b = load_portfolio(rc.b_path, rc.b_node, "b", desc_b);
  OrderVerdict verdict;
  GridSpec g;
  bool used_grid = false;
  if (relation == OrderRelation::St) {
    g = resolve_grid(rc, std::max(choose_x_max(a), choose_x_max(b)));
    used_grid = true;
    verdict = check_st_on_grid(a, b, linspace(0.0, g.x_max, g.n_points));
  } else {
    phr_gumbel_tilt(a);  // hr and lr need the closed-form setting
    phr_gumbel_tilt(b);
    if (a.copula.theta != b.copula.theta) {
      throw UnsupportedError("portfolios must share the copula parameter");
    }
    const Baseline& ba = a.marginal.baseline();
    const Baseline& bb = b.marginal.baseline();
    if (ba.kind != bb.kind || ba.rate != bb.rate || ba.c != bb.c ||
        ba.k != bb.k) {
      throw UnsupportedError("portfolios must share the baseline");
    }
    verdict = relation == OrderRelation::Hr
                  ? hr_characterization_gumbel_phr(a.lambdas, a.probs,
                                                   b.lambdas, b.probs,
                                                   a.copula.theta)
                  : lr_characterization(a.lambdas, a.probs, b.lambdas, b.probs,
                                        a.copula.theta);
  }
  std::string text = to_json(verdict, 2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!rc.out_path.empty()) {
    write_text_file(rc.out_path, text);
    write_run_sidecar(rc, used_grid ? &g : nullptr,
                      {{"a", desc_a},
                       {"b", desc_b},
                       {"relation", relation_name(relation)},
                       {"fingerprint_a", portfolio_fingerprint(a)},
                       {"fingerprint_b", portfolio_fingerprint(b)}});
  }
  switch (verdict.direction) {
    case OrderDirection::ALeqB:
    case OrderDirection::BLeqA:
    case OrderDirection::Equal:
      return 0;
    case OrderDirection::Incomparable:
      return 1;
    case OrderDirection::Inconclusive:
      return 5;
  }
  return 5;
}

int cmd_simulate(RunConfig& rc) {
  if (rc.n < 1) throw ParseError("simulate needs n >= 1");
  if (rc.n > std::numeric_limits<int>::max()) {
    throw ParseError("n is too large");
  }
  json desc;
  Portfolio pf =
      load_portfolio(rc.portfolio_path, rc.portfolio_node, "portfolio", desc);
  GridSpec g = resolve_grid(rc, choose_x_max(pf));
  std::vector<double> xs = linspace(0.0, g.x_max, g.n_points);
  SampleBatch batch =
      sample_smallest_claim(pf, static_cast<int>(rc.n), rc.seed);
  EmpiricalCurve empirical = empirical_survival(batch, pf, xs);
  SurvivalCurve analytic = survival_curve(pf, xs);
  double max_z = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double err = std::fabs(empirical.survival[i] - analytic.values[i]);
    double se = empirical.std_err[i];
    double z = se > 0.0 ? err / se
                        : (err == 0.0 ? 0.0
                                      : std::numeric_limits<double>::infinity());
    max_z = std::max(max_z, z);
  }
  emit(simulation_csv(empirical, analytic), rc.out_path);
  std::fprintf(stderr, "max |z| = %.3f over %d grid points (n=%lld, seed=%llu)\n",
               max_z, g.n_points, rc.n,
               static_cast<unsigned long long>(rc.seed));
  write_run_sidecar(rc, &g,
                    {{"portfolio", desc},
                     {"fingerprint", portfolio_fingerprint(pf)},
                     {"n", rc.n},
                     {"seed", rc.seed}});
  return 0;
}

int cmd_reproduce(RunConfig& rc) {
  Portfolio pf = reference_portfolio(rc.example);
  BoundsMethod diagonal_method;
  BoundsMethod puod_method;
  switch (rc.example) {
    case 1:
      diagonal_method = BoundsMethod::Cor7;
      puod_method = BoundsMethod::Cor8;
      break;
    case 2:
      diagonal_method = BoundsMethod::Cor10;
      puod_method = BoundsMethod::Cor11;
      break;
    default:
      diagonal_method = BoundsMethod::Cor13;
      puod_method = BoundsMethod::Cor14;
      break;
  }
  std::string dir = rc.out_path.empty() ? std::string(".") : rc.out_path;
  std::filesystem::create_directories(dir);
  std::string prefix = dir + "/example" + std::to_string(rc.example);

  write_text_file(prefix + "_portfolio.json", to_json(pf, 2) + "\n");
  std::printf("wrote %s_portfolio.json\n", prefix.c_str());

  double x_max = choose_x_max(pf);
  std::vector<double> xs = linspace(0.0, x_max, 201);
  SurvivalCurve exact = survival_curve(pf, xs);
  for (BoundsMethod method : {diagonal_method, puod_method}) {
    BoundsCurve bounds = bounds_curve(pf, xs, method, BoundsOptions{});
    std::string path = prefix + "_" + method_name(method) + ".csv";
    write_text_file(path, bounds_csv(exact, bounds));
    std::printf("wrote %s\n", path.c_str());
  }

  SampleBatch batch =
      sample_smallest_claim(pf, kReproduceSamples, kReproduceSeed);
  EmpiricalCurve empirical = empirical_survival(batch, pf, xs);
  write_text_file(prefix + "_simulate.csv", simulation_csv(empirical, exact));
  std::printf("wrote %s_simulate.csv\n", prefix.c_str());

  json run;
  run["command"] = "reproduce";
  run["example"] = rc.example;
  run["out"] = dir;
  run["grid"] = {{"x_max", x_max}, {"n_points", 201}};
  run["n"] = kReproduceSamples;
  run["seed"] = kReproduceSeed;
  run["fingerprint"] = portfolio_fingerprint(pf);
  write_text_file(prefix + ".run.json", run.dump(2) + "\n");
  return 0;
}

int dispatch(RunConfig& rc) {
  if (rc.command == "survival") return cmd_survival(rc);
  if (rc.command == "bounds") return cmd_bounds(rc);
  if (rc.command == "compare") return cmd_compare(rc);
  if (rc.command == "simulate") return cmd_simulate(rc);
  return cmd_reproduce(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "smallest claim amount in a dependent portfolio: exact survival "
      "curves, analytic bounds, stochastic-order verdicts, and a Monte "
      "Carlo check"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid", rc.grid_text, "evaluation grid as X_MAX:N");
    sub->add_option("--out", rc.out_path, "output file (default: stdout)");
    sub->add_option("--config", rc.config_path,
                    "JSON config file; explicit flags win");
  };

  CLI::App* survival =
      app.add_subcommand("survival", "exact survival curve as CSV");
  survival->add_option("--portfolio", rc.portfolio_path, "portfolio JSON file");
  add_common(survival);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "analytic lower/upper bounds next to the exact curve");
  bounds->add_option("--portfolio", rc.portfolio_path, "portfolio JSON file");
  bounds->add_option("--method", rc.method_text,
                     "thm4, thm5, cor7, cor8, cor10, cor11, cor13, or cor14");
  bounds->add_flag("--force", rc.force, "emit bounds even if a premise fails");
  add_common(bounds);

  CLI::App* compare = app.add_subcommand(
      "compare", "stochastic-order verdict between two portfolios");
  compare->add_option("--a", rc.a_path, "first portfolio JSON file");
  compare->add_option("--b", rc.b_path, "second portfolio JSON file");
  compare->add_option("--relation", rc.relation_text, "st, hr, or lr");
  add_common(compare);

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo check of the exact curve");
  simulate->add_option("--portfolio", rc.portfolio_path,
                       "portfolio JSON file");
  simulate->add_option("--n", rc.n, "number of draws");
  simulate->add_option("--seed", rc.seed, "RNG seed");
  add_common(simulate);

  CLI::App* reproduce = app.add_subcommand(
      "reproduce", "write the built-in example portfolio, its two bound "
                   "CSVs, and a Monte Carlo CSV");
  reproduce->add_option("example", rc.example, "example number (1-3)")
      ->required()
      ->check(CLI::Range(1, 3));
  reproduce->add_option("--out", rc.out_path, "output directory (default .)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* active = app.get_subcommands().front();
  rc.command = active->get_name();
  try {
    merge_config(rc, active);
    return dispatch(rc);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const PremiseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const UnsupportedError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
