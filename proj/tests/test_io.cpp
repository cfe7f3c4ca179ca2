#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "minclaim/csv.hpp"
#include "minclaim/errors.hpp"
#include "minclaim/examples.hpp"
#include "minclaim/json_io.hpp"
#include "minclaim/orders.hpp"
#include "minclaim/sampler.hpp"
#include "support/testkit.hpp"

using namespace minclaim;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "minclaim_io_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("portfolio json round trip preserves the distribution") {
  for (int which : {1, 2, 3}) {
    Portfolio pf = reference_portfolio(which);
    Portfolio back = portfolio_from_json(to_json(pf));
    CHECK(back.size() == pf.size());
    CHECK(portfolio_fingerprint(back) == portfolio_fingerprint(pf));
    for (double x : {0.0, 0.3, 1.0, 2.4}) {
      CHECK(smallest_claim_survival(back, x) == smallest_claim_survival(pf, x));
    }
  }
}

TEST_CASE("copula and marginal json round trips") {
  CopulaSpec c = CopulaSpec::frank(5.0, 3);
  CopulaSpec c2 = copula_from_json(to_json(c));
  CHECK(c2.family == c.family);
  CHECK(c2.theta == c.theta);
  CHECK(c2.dim == c.dim);

  MarginalSpec m = MarginalSpec::harris(
      Baseline::stretched_exponential(3.0, 2.0), 1.5, 2.5);
  MarginalSpec m2 = marginal_from_json(to_json(m));
  CHECK(m2.family() == m.family());
  CHECK(m2.lambda() == m.lambda());
  CHECK(m2.theta_h() == m.theta_h());
  CHECK(m2.baseline().c == 3.0);
  CHECK(m2.baseline().k == 2.0);
}

TEST_CASE("json field defaults") {
  CopulaSpec indep = copula_from_json(R"({"family":"independence","dim":4})");
  CHECK(indep.family == CopulaFamily::Independence);
  CHECK(indep.dim == 4);

  MarginalSpec m = marginal_from_json(
      R"({"model":"phr","baseline":{"kind":"exponential"}})");
  CHECK(m.lambda() == 1.0);
  CHECK(m.baseline().rate == 1.0);
}

TEST_CASE("json parse errors name the offending field") {
  CHECK_THROWS_WITH_AS((void)portfolio_from_json(R"({"lambdas":[1.0]})"),
                       doctest::Contains("missing field: probs"), ParseError);
  CHECK_THROWS_WITH_AS(
      (void)copula_from_json(R"({"family":"frank","dim":2})"),
      doctest::Contains("theta"), ParseError);
  CHECK_THROWS_WITH_AS(
      (void)portfolio_from_json(
          R"({"lambdas":[1.0,2.0],"probs":[0.5,0.5],)"
          R"("marginal":{"model":"phr","baseline":{"kind":"exponential"}},)"
          R"("copula":{"family":"frank","theta":"big","dim":2}})"),
      doctest::Contains("copula.theta must be a number"), ParseError);
  CHECK_THROWS_AS((void)portfolio_from_json("not json at all"), ParseError);
  CHECK_THROWS_AS(
      (void)copula_from_json(R"({"family":"gaussian","theta":1,"dim":2})"),
      ParseError);

  // semantic violations surface as DomainError through the factories
  CHECK_THROWS_AS(
      (void)copula_from_json(R"({"family":"frank","theta":-1,"dim":2})"),
      DomainError);
}

TEST_CASE("portfolio fingerprint is canonical") {
  Portfolio pf = reference_portfolio(1);
  std::string fp = portfolio_fingerprint(pf);
  CHECK(fp.size() == 16);
  CHECK(fp.find_first_not_of("0123456789abcdef") == std::string::npos);

  // same content, different key order in the source text
  std::string reordered = R"({
    "copula": {"dim": 3, "family": "frank", "theta": 5.0},
    "marginal": {"baseline": {"kind": "exponential", "rate": 1.0},
                 "lambda": 1.0, "model": "prhr"},
    "probs": [0.5, 0.6, 0.1],
    "lambdas": [3.0, 6.0, 2.0]
  })";
  CHECK(portfolio_fingerprint(portfolio_from_json(reordered)) == fp);

  CHECK(portfolio_fingerprint(reference_portfolio(2)) != fp);
}

TEST_CASE("verdict json shape") {
  OrderVerdict v = lr_characterization({1.0, 1.0}, {0.9, 0.9}, {2.0, 2.0},
                                       {0.9, 0.9}, 2.0);
  std::string text = to_json(v, 2);
  CHECK(contains(text, "\"relation\": \"lr\""));
  CHECK(contains(text, "\"direction\": \"incomparable\""));
  CHECK(contains(text, "\"witness\""));
  CHECK(contains(text, "\"certificate\""));
  CHECK_FALSE(contains(text, "\"witness\": null"));

  OrderVerdict eq = lr_characterization({1.0, 1.0}, {0.9, 0.9}, {1.0, 1.0},
                                        {0.9, 0.9}, 2.0);
  CHECK(contains(to_json(eq, 2), "\"witness\": null"));
}

TEST_CASE("survival csv") {
  Portfolio pf = reference_portfolio(1);
  SurvivalCurve curve = survival_curve(pf, linspace(0.0, 2.0, 5));
  std::string csv = survival_csv(curve);
  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "x,exact");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 2);
    CHECK(std::strtod(fields[0].c_str(), nullptr) == curve.xs[i - 1]);
    CHECK(std::strtod(fields[1].c_str(), nullptr) == curve.values[i - 1]);
  }
}

TEST_CASE("bounds csv") {
  Portfolio pf = reference_portfolio(1);
  std::vector<double> xs = linspace(0.0, 2.0, 4);
  SurvivalCurve exact = survival_curve(pf, xs);
  BoundsCurve bounds = bounds_curve(pf, xs, BoundsMethod::Cor7);
  std::string csv = bounds_csv(exact, bounds);
  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "x,exact,lower,upper,method");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 5);
    CHECK(fields[4] == "cor7");
    CHECK(std::strtod(fields[2].c_str(), nullptr) == bounds.lower[i - 1]);
    CHECK(std::strtod(fields[3].c_str(), nullptr) == bounds.upper[i - 1]);
  }

  BoundsCurve mismatched = bounds;
  mismatched.lower.pop_back();
  CHECK_THROWS_AS((void)bounds_csv(exact, mismatched), DomainError);
}

TEST_CASE("simulation csv flags three sigma misses") {
  Portfolio pf = reference_portfolio(1);
  SampleBatch batch = sample_smallest_claim(pf, 50000, 12);
  std::vector<double> xs = linspace(0.0, 2.0, 6);
  EmpiricalCurve emp = empirical_survival(batch, pf, xs);
  SurvivalCurve exact = survival_curve(pf, xs);
  std::string csv = simulation_csv(emp, exact);
  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "x,empirical,se,analytic,abs_err,within_3se");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string> fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 6);
    double emp_v = std::strtod(fields[1].c_str(), nullptr);
    double se = std::strtod(fields[2].c_str(), nullptr);
    double exact_v = std::strtod(fields[3].c_str(), nullptr);
    double err = std::strtod(fields[4].c_str(), nullptr);
    CHECK(std::fabs(err - std::fabs(emp_v - exact_v)) <= 1e-18);
    bool within = err <= 3.0 * se;
    CHECK(fields[5] == (within ? "true" : "false"));
  }
}

TEST_CASE("batch export writes draws and a sidecar") {
  Portfolio pf = reference_portfolio(1);
  SampleBatch batch = sample_smallest_claim(pf, 100, 3);
  auto path = scratch_dir() / "batch.csv";
  export_batch(batch, path.string());

  std::string csv = read_text_file(path.string());
  std::vector<std::string> lines = split_lines(csv);
  REQUIRE(lines.size() == 101);
  CHECK(lines[0] == "y");
  CHECK(std::strtod(lines[1].c_str(), nullptr) == batch.y_min[0]);

  std::string sidecar = read_text_file(path.string() + ".json");
  CHECK(contains(sidecar, "\"seed\""));
  CHECK(contains(sidecar, "\"n_samples\""));
  CHECK(contains(sidecar, batch.fingerprint));
}

TEST_CASE("text file round trip and missing file error") {
  auto path = scratch_dir() / "note.txt";
  write_text_file(path.string(), "alpha\nbeta\n");
  CHECK(read_text_file(path.string()) == "alpha\nbeta\n");
  CHECK_THROWS_AS((void)read_text_file((scratch_dir() / "absent.txt").string()),
                  ParseError);
}

}  // TEST_SUITE
