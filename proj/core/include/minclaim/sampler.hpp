#ifndef MINCLAIM_SAMPLER_HPP
#define MINCLAIM_SAMPLER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "minclaim/portfolio.hpp"

namespace minclaim {

// Row-major n_rows x n_cols matrix of copula draws.
struct CopulaSample {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<double> data;

  double at(int row, int col) const { return data[row * n_cols + col]; }
};

// Marshall-Olkin frailty sampler: V from the family's frailty law
// (Gamma for clayton, positive stable for gumbel_hougaard, logarithmic for
// frank, degenerate for independence), then U_i = psi(E_i / V).  Fixed seed
// gives a bit-identical sample on every platform.
CopulaSample sample_archimedean(const CopulaSpec& copula, int n,
                                std::uint64_t seed);

struct SampleBatch {
  std::vector<double> y_min;
  int n_samples = 0;
  std::uint64_t seed = 0;
  std::string fingerprint;  // portfolio fingerprint the batch was drawn from
};

// Simulates Y = min(I_i X_i): copula draws feed the marginal inverse
// survivals (survival orientation, X_i = F_bar^{-1}(U_i)), occurrence
// indicators come from an independent substream, a miss contributes zero.
SampleBatch sample_smallest_claim(const Portfolio& pf, int n,
                                  std::uint64_t seed);

struct EmpiricalCurve {
  std::vector<double> xs;
  std::vector<double> survival;  // fraction of draws with y > x
  std::vector<double> std_err;   // binomial SE at the analytic survival
};

EmpiricalCurve empirical_survival(const SampleBatch& batch,
                                  const Portfolio& pf,
                                  const std::vector<double>& xs);

}  // namespace minclaim

#endif  // MINCLAIM_SAMPLER_HPP
