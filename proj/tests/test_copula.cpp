#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "minclaim/copula.hpp"
#include "minclaim/errors.hpp"
#include "support/testkit.hpp"

using namespace minclaim;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<CopulaSpec> sample_families(int dim) {
  std::vector<CopulaSpec> out{
      CopulaSpec::independence(dim), CopulaSpec::frank(5.0, dim),
      CopulaSpec::clayton(3.0, dim), CopulaSpec::gumbel_hougaard(2.0, dim)};
  if (dim >= 2) {
    out.push_back(CopulaSpec::lower_frechet(dim));
    out.push_back(CopulaSpec::upper_frechet(dim));
  }
  return out;
}

}  // namespace

TEST_SUITE("copula") {

TEST_CASE("generator values at pinned points") {
  CHECK(CopulaSpec::clayton(3.0, 2).generator(1.0) == 0.0);

  double g = CopulaSpec::gumbel_hougaard(2.0, 2).generator(std::exp(-1.0));
  CHECK(std::fabs(g - 1.0) <= 1e-14);

  // frank theta=5 at t=0.5: -log((e^{-2.5}-1)/(e^{-5}-1))
  double expected = -std::log(std::expm1(-2.5) / std::expm1(-5.0));
  CHECK(std::fabs(CopulaSpec::frank(5.0, 2).generator(0.5) - expected) <=
        1e-14);
}

TEST_CASE("generator endpoint behavior") {
  for (const CopulaSpec& c :
       {CopulaSpec::independence(2), CopulaSpec::frank(5.0, 2),
        CopulaSpec::clayton(3.0, 2), CopulaSpec::gumbel_hougaard(2.0, 2)}) {
    CHECK(c.generator(0.0) == kInf);
    CHECK(std::fabs(c.generator(1.0)) <= 1e-15);
    CHECK(c.generator_inverse(kInf) == 0.0);
    CHECK(c.generator_inverse(0.0) == 1.0);
  }
}

TEST_CASE("generator round trip") {
  testkit::TestRng rng(3);
  for (const CopulaSpec& c :
       {CopulaSpec::independence(2), CopulaSpec::frank(5.0, 2),
        CopulaSpec::frank(0.7, 2), CopulaSpec::clayton(3.0, 2),
        CopulaSpec::clayton(0.4, 2), CopulaSpec::gumbel_hougaard(2.0, 2),
        CopulaSpec::gumbel_hougaard(1.0, 2)}) {
    for (int i = 0; i < 50; ++i) {
      double t = rng.uniform(1e-6, 1.0);
      CHECK(std::fabs(c.generator_inverse(c.generator(t)) - t) <= 1e-10);
    }
    CHECK(c.generator_inverse(c.generator(1.0)) == 1.0);
  }
}

TEST_CASE("generator domain and family errors") {
  CopulaSpec frank = CopulaSpec::frank(5.0, 2);
  CHECK_THROWS_AS((void)frank.generator(-0.1), DomainError);
  CHECK_THROWS_AS((void)frank.generator(1.5), DomainError);
  CHECK_THROWS_AS((void)frank.generator_inverse(-1.0), DomainError);
  CHECK_THROWS_AS((void)CopulaSpec::lower_frechet(2).generator(0.5),
                  UnsupportedError);
  CHECK_THROWS_AS((void)CopulaSpec::upper_frechet(2).generator_inverse(1.0),
                  UnsupportedError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((void)CopulaSpec::frank(0.0, 2), DomainError);
  CHECK_THROWS_AS((void)CopulaSpec::frank(-2.0, 2), DomainError);
  CHECK_THROWS_AS((void)CopulaSpec::clayton(0.0, 2), DomainError);
  CHECK_THROWS_AS((void)CopulaSpec::gumbel_hougaard(0.9, 2), DomainError);
  CHECK_THROWS_AS((void)CopulaSpec::independence(0), DomainError);
}

TEST_CASE("eval at pinned points") {
  std::vector<double> ones{1.0, 1.0, 1.0};
  for (const CopulaSpec& c : sample_families(3)) {
    CHECK(std::fabs(c.eval(ones) - 1.0) <= 1e-14);
  }

  CopulaSpec frank = CopulaSpec::frank(5.0, 3);
  std::vector<double> with_zero{0.0, 0.3, 0.9};
  CHECK(frank.eval(with_zero) == 0.0);

  // explicit 3-dim frank form at (0.5, 0.6, 0.1)
  std::vector<double> u{0.5, 0.6, 0.1};
  double b = std::expm1(-5.0);
  double expected =
      -std::log1p(std::expm1(-2.5) * std::expm1(-3.0) * std::expm1(-0.5) /
                  (b * b)) /
      5.0;
  CHECK(std::fabs(frank.eval(u) - expected) <= 1e-14);
  CHECK(std::fabs(frank.eval_via_generator(u) - expected) <= 1e-12);
}

TEST_CASE("eval input validation") {
  CopulaSpec frank = CopulaSpec::frank(5.0, 3);
  std::vector<double> short_u{0.5, 0.5};
  CHECK_THROWS_AS((void)frank.eval(short_u), DomainError);
  std::vector<double> nan_u{0.5, std::numeric_limits<double>::quiet_NaN(), 0.5};
  CHECK_THROWS_AS((void)frank.eval(nan_u), DomainError);
  std::vector<double> out_u{0.5, 1.5, 0.5};
  CHECK_THROWS_AS((void)frank.eval(out_u), DomainError);
}

TEST_CASE("closed form agrees with the generator composition") {
  testkit::TestRng rng(17);
  for (int dim = 2; dim <= 3; ++dim) {
    for (const CopulaSpec& c :
         {CopulaSpec::frank(5.0, dim), CopulaSpec::frank(0.8, dim),
          CopulaSpec::clayton(3.0, dim), CopulaSpec::clayton(0.5, dim),
          CopulaSpec::gumbel_hougaard(2.0, dim),
          CopulaSpec::gumbel_hougaard(3.7, dim)}) {
      for (int trial = 0; trial < 60; ++trial) {
        std::vector<double> u(static_cast<std::size_t>(dim));
        for (double& ui : u) ui = rng.uniform(0.02, 0.98);
        CHECK(std::fabs(c.eval(u) - c.eval_via_generator(u)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("high dimensional frank stays consistent") {
  testkit::TestRng rng(19);
  CopulaSpec frank = CopulaSpec::frank(5.0, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> u(6);
    for (double& ui : u) ui = rng.uniform(0.05, 0.95);
    double via_gen = frank.eval_via_generator(u);
    CHECK(frank.eval(u) == via_gen);  // dim > 3 routes through the generator
    CHECK(via_gen >= 0.0);
    CHECK(via_gen <= 1.0);
  }
}

TEST_CASE("diagonal section") {
  CHECK(CopulaSpec::independence(3).diagonal(0.5) == 0.125);
  double d = CopulaSpec::gumbel_hougaard(2.0, 3).diagonal(std::exp(-1.0));
  CHECK(std::fabs(d - std::exp(-std::sqrt(3.0))) <= 1e-14);
  testkit::TestRng rng(23);
  for (const CopulaSpec& c : sample_families(3)) {
    CHECK(c.diagonal(1.0) == 1.0);
    CHECK(c.diagonal(0.0) == 0.0);
    for (int i = 0; i < 20; ++i) {
      double u = rng.uniform(0.0, 1.0);
      CHECK(c.diagonal(u) <= u + 1e-15);
    }
  }
}

TEST_CASE("frechet bounds") {
  std::vector<double> ones{1.0, 1.0, 1.0};
  FrechetBounds fb = frechet_bounds(ones);
  CHECK(fb.lower == 1.0);
  CHECK(fb.upper == 1.0);

  std::vector<double> half{0.5, 0.5};
  fb = frechet_bounds(half);
  CHECK(fb.lower == 0.0);
  CHECK(fb.upper == 0.5);

  std::vector<double> mixed{0.9, 0.8, 0.7};
  fb = frechet_bounds(mixed);
  CHECK(std::fabs(fb.lower - 0.4) <= 1e-12);
  CHECK(fb.upper == 0.7);
}

TEST_CASE("every family respects the frechet sandwich") {
  testkit::TestRng rng(29);
  for (int dim = 2; dim <= 4; ++dim) {
    for (const CopulaSpec& c : sample_families(dim)) {
      for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> u(static_cast<std::size_t>(dim));
        for (double& ui : u) ui = rng.uniform(0.0, 1.0);
        FrechetBounds fb = frechet_bounds(u);
        double v = c.eval(u);
        CHECK(v >= fb.lower - 1e-12);
        CHECK(v <= fb.upper + 1e-12);
      }
    }
  }
}

TEST_CASE("groundedness and corner margins") {
  testkit::TestRng rng(31);
  for (const CopulaSpec& c : sample_families(3)) {
    for (int pos = 0; pos < 3; ++pos) {
      std::vector<double> u{rng.uniform(0.1, 1.0), rng.uniform(0.1, 1.0),
                            rng.uniform(0.1, 1.0)};
      u[static_cast<std::size_t>(pos)] = 0.0;
      CHECK(c.eval(u) == 0.0);

      std::vector<double> corner{1.0, 1.0, 1.0};
      double m = rng.uniform(0.0, 1.0);
      corner[static_cast<std::size_t>(pos)] = m;
      CHECK(std::fabs(c.eval(corner) - m) <= 1e-10);
    }
  }
}

TEST_CASE("eval is coordinatewise non-decreasing") {
  testkit::TestRng rng(37);
  for (const CopulaSpec& c : sample_families(3)) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> u{rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0),
                            rng.uniform(0.0, 1.0)};
      std::vector<double> v = u;
      int pos = rng.pick(3);
      v[static_cast<std::size_t>(pos)] =
          std::min(1.0, u[static_cast<std::size_t>(pos)] +
                            rng.uniform(0.0, 0.5));
      CHECK(c.eval(v) >= c.eval(u) - 1e-12);
    }
  }
}

TEST_CASE("puod grid certificate") {
  GridCertificate indep = is_puod_on_grid(CopulaSpec::independence(3), 8);
  CHECK(indep.verdict);
  CHECK(std::fabs(indep.min_slack) <= 1e-15);

  GridCertificate clayton = is_puod_on_grid(CopulaSpec::clayton(3.0, 3), 20);
  CHECK(clayton.verdict);
  CHECK(clayton.min_slack >= -1e-12);

  GridCertificate lower = is_puod_on_grid(CopulaSpec::lower_frechet(2), 20);
  CHECK_FALSE(lower.verdict);
  CHECK(std::fabs(lower.witness[0] - 0.5) <= 1e-12);
  CHECK(std::fabs(lower.witness[1] - 0.5) <= 1e-12);
  CHECK(std::fabs(lower.min_slack - (-0.25)) <= 1e-12);
}

TEST_CASE("copula dominance grid certificate") {
  CopulaSpec frank = CopulaSpec::frank(5.0, 3);
  GridCertificate self = copula_dominates_on_grid(frank, frank, 10);
  CHECK(self.verdict);
  CHECK(std::fabs(self.min_slack) <= 1e-15);

  GridCertificate indep_upper = copula_dominates_on_grid(
      CopulaSpec::independence(2), CopulaSpec::upper_frechet(2), 20);
  CHECK(indep_upper.verdict);

  GridCertificate clayton_pair = copula_dominates_on_grid(
      CopulaSpec::clayton(1.0, 3), CopulaSpec::clayton(4.0, 3), 15);
  CHECK(clayton_pair.verdict);

  CHECK_THROWS_AS((void)copula_dominates_on_grid(CopulaSpec::independence(2),
                                                 CopulaSpec::independence(3),
                                                 10),
                  DomainError);
}

TEST_CASE("schur concavity probe") {
  ProbeResult indep = schur_concavity_probe(CopulaSpec::independence(3), 2000, 5);
  CHECK(indep.verdict);

  ProbeResult frank = schur_concavity_probe(CopulaSpec::frank(5.0, 3), 10000, 5);
  CHECK(frank.verdict);
  CHECK(frank.worst_violation >= -1e-9);
  CHECK(frank.trials == 10000);

  ProbeResult clayton =
      schur_concavity_probe(CopulaSpec::clayton(2.5, 4), 5000, 9);
  CHECK(clayton.verdict);

  CHECK_THROWS_AS((void)schur_concavity_probe(CopulaSpec::frank(5.0, 3), 0, 1),
                  DomainError);
}

}  // TEST_SUITE
