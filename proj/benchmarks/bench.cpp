#include <benchmark/benchmark.h>

#include <vector>

#include "minclaim/examples.hpp"
#include "minclaim/portfolio.hpp"
#include "minclaim/sampler.hpp"

using namespace minclaim;

namespace {

void BM_CopulaEvalClosed(benchmark::State& state) {
  CopulaSpec c = CopulaSpec::frank(5.0, 3);
  std::vector<double> u{0.5, 0.6, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.eval(u));
  }
}
BENCHMARK(BM_CopulaEvalClosed);

void BM_CopulaEvalGenerator(benchmark::State& state) {
  CopulaSpec c = CopulaSpec::frank(5.0, 3);
  std::vector<double> u{0.5, 0.6, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.eval_via_generator(u));
  }
}
BENCHMARK(BM_CopulaEvalGenerator);

void BM_SmallestClaimSurvival(benchmark::State& state) {
  Portfolio pf = reference_portfolio(1);
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x > 4.0) x = 0.001;
    benchmark::DoNotOptimize(smallest_claim_survival(pf, x));
  }
}
BENCHMARK(BM_SmallestClaimSurvival);

void BM_InverseSurvival(benchmark::State& state) {
  MarginalSpec m = MarginalSpec::harris(Baseline::exponential(1.0), 2.0, 3.0);
  double q = 0.0;
  for (auto _ : state) {
    q += 0.001;
    if (q >= 1.0) q = 0.001;
    benchmark::DoNotOptimize(m.inverse_survival(q));
  }
}
BENCHMARK(BM_InverseSurvival);

void BM_BoundsCurve(benchmark::State& state) {
  Portfolio pf = reference_portfolio(1);
  std::vector<double> xs = linspace(0.0, 4.0, 51);
  BoundsOptions fast;
  fast.verify_premises = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bounds_curve(pf, xs, BoundsMethod::Cor7, fast));
  }
}
BENCHMARK(BM_BoundsCurve);

void BM_SampleSmallestClaim(benchmark::State& state) {
  Portfolio pf = reference_portfolio(static_cast<int>(state.range(0)));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_smallest_claim(pf, 1000, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_SampleSmallestClaim)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
