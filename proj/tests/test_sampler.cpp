#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "minclaim/errors.hpp"
#include "minclaim/examples.hpp"
#include "minclaim/sampler.hpp"
#include "support/testkit.hpp"

using namespace minclaim;

namespace {

// Empirical copula mass below a lattice point v, against C(v).
double orthant_fraction(const CopulaSample& s, const std::vector<double>& v) {
  int hits = 0;
  for (int r = 0; r < s.n_rows; ++r) {
    bool inside = true;
    for (int c = 0; c < s.n_cols; ++c) {
      inside = inside && s.at(r, c) < v[static_cast<std::size_t>(c)];
    }
    hits += inside ? 1 : 0;
  }
  return static_cast<double>(hits) / s.n_rows;
}

void check_orthant(const CopulaSpec& c, int n, std::uint64_t seed) {
  CopulaSample s = sample_archimedean(c, n, seed);
  testkit::TestRng pts(77);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(c.dim));
    for (double& vi : v) vi = pts.uniform(0.25, 0.9);
    double expected = c.eval(v);
    double se = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::fabs(orthant_fraction(s, v) - expected) <= 3.0 * se + 1e-12);
  }
}

}  // namespace

TEST_SUITE("sampler") {

TEST_CASE("copula margins are uniform") {
  const int n = 100000;
  double crit = 1.628 / std::sqrt(static_cast<double>(n));
  for (const CopulaSpec& c :
       {CopulaSpec::independence(3), CopulaSpec::frank(5.0, 3),
        CopulaSpec::clayton(3.0, 3), CopulaSpec::gumbel_hougaard(2.0, 3)}) {
    CopulaSample s = sample_archimedean(c, n, 2024);
    REQUIRE(s.n_rows == n);
    REQUIRE(s.n_cols == 3);
    for (int col = 0; col < 3; ++col) {
      std::vector<double> column(static_cast<std::size_t>(n));
      for (int r = 0; r < n; ++r) column[static_cast<std::size_t>(r)] = s.at(r, col);
      CHECK(testkit::ks_uniform(column) < crit);
    }
  }
}

TEST_CASE("copula samples land in lower orthants at the right rate") {
  check_orthant(CopulaSpec::independence(2), 100000, 7);
  check_orthant(CopulaSpec::frank(5.0, 3), 100000, 8);
  check_orthant(CopulaSpec::clayton(3.0, 3), 100000, 9);
  check_orthant(CopulaSpec::gumbel_hougaard(2.0, 3), 100000, 10);
  check_orthant(CopulaSpec::gumbel_hougaard(1.0, 2), 100000, 11);
}

TEST_CASE("clayton diagonal frequency") {
  CopulaSpec c = CopulaSpec::clayton(3.0, 3);
  const int n = 100000;
  CopulaSample s = sample_archimedean(c, n, 31);
  std::vector<double> v{0.5, 0.5, 0.5};
  double expected = c.diagonal(0.5);
  double se = std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::fabs(orthant_fraction(s, v) - expected) <= 3.0 * se);
}

TEST_CASE("unsupported copula families and bad arguments") {
  CHECK_THROWS_AS((void)sample_archimedean(CopulaSpec::lower_frechet(2), 10, 1),
                  UnsupportedError);
  CHECK_THROWS_AS((void)sample_archimedean(CopulaSpec::upper_frechet(2), 10, 1),
                  UnsupportedError);
  CHECK_THROWS_AS((void)sample_archimedean(CopulaSpec::frank(5.0, 2), 0, 1),
                  DomainError);
}

TEST_CASE("samples are reproducible from the seed") {
  Portfolio pf = reference_portfolio(1);
  SampleBatch a = sample_smallest_claim(pf, 5000, 99);
  SampleBatch b = sample_smallest_claim(pf, 5000, 99);
  REQUIRE(a.y_min.size() == b.y_min.size());
  CHECK(std::equal(a.y_min.begin(), a.y_min.end(), b.y_min.begin()));
  CHECK(a.fingerprint == b.fingerprint);
  CHECK(a.seed == 99);
  CHECK(a.n_samples == 5000);

  SampleBatch c = sample_smallest_claim(pf, 5000, 100);
  CHECK_FALSE(std::equal(a.y_min.begin(), a.y_min.end(), c.y_min.begin()));
}

TEST_CASE("sure independent claims recover the exponential minimum") {
  Portfolio pf = Portfolio::make(
      {1.0, 1.0}, {1.0, 1.0}, MarginalSpec::phr(Baseline::exponential(1.0), 1.0),
      CopulaSpec::independence(2));
  const int n = 1000000;
  SampleBatch batch = sample_smallest_claim(pf, n, 4242);
  std::vector<double> xs{0.1, 0.5, 1.0};
  EmpiricalCurve curve = empirical_survival(batch, pf, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double expected = std::exp(-2.0 * xs[i]);
    CHECK(curve.std_err[i] > 0.0);
    CHECK(std::fabs(curve.survival[i] - expected) <= 3.0 * curve.std_err[i]);
  }
}

TEST_CASE("atom mass at zero matches the occurrence probabilities") {
  Portfolio pf = reference_portfolio(1);
  const int n = 200000;
  SampleBatch batch = sample_smallest_claim(pf, n, 777);
  double zeros = 0.0;
  for (double y : batch.y_min) zeros += (y == 0.0) ? 1.0 : 0.0;
  double expected = 1.0 - pf.prob_product();
  double se = std::sqrt(expected * (1.0 - expected) / n);
  CHECK(std::fabs(zeros / n - expected) <= 3.0 * se);
}

TEST_CASE("empirical curves track the exact survival on the references") {
  for (int which : {1, 2, 3}) {
    Portfolio pf = reference_portfolio(which);
    const int n = 400000;
    SampleBatch batch = sample_smallest_claim(pf, n, 1000 + which);
    std::vector<double> xs = linspace(0.0, choose_x_max(pf, 1e-2), 7);
    EmpiricalCurve curve = empirical_survival(batch, pf, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double exact = smallest_claim_survival(pf, xs[i]);
      double slack = 3.0 * curve.std_err[i] + 1e-12;
      CHECK(std::fabs(curve.survival[i] - exact) <= slack);
    }
  }
}

TEST_CASE("empirical survival edge cases") {
  Portfolio pf = reference_portfolio(1);
  SampleBatch batch = sample_smallest_claim(pf, 2000, 5);

  double top = *std::max_element(batch.y_min.begin(), batch.y_min.end());
  std::vector<double> xs{0.0, top, top + 1.0};
  EmpiricalCurve curve = empirical_survival(batch, pf, xs);

  // strict exceedance: y > 0 happens exactly when every claim fires
  double firing = 0.0;
  for (double y : batch.y_min) firing += (y > 0.0) ? 1.0 : 0.0;
  CHECK(curve.survival[0] == firing / 2000.0);
  CHECK(curve.survival[1] == 0.0);
  CHECK(curve.survival[2] == 0.0);

  SampleBatch one = sample_smallest_claim(pf, 1, 6);
  EmpiricalCurve single = empirical_survival(one, pf, {0.0});
  CHECK((single.survival[0] == 0.0 || single.survival[0] == 1.0));
}

}  // TEST_SUITE
