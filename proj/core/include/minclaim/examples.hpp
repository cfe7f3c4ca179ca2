#ifndef MINCLAIM_EXAMPLES_HPP
#define MINCLAIM_EXAMPLES_HPP

#include "minclaim/portfolio.hpp"

namespace minclaim {

// Three reference portfolios used throughout the tests and the acceptance
// suite:
//   1: prhr marginals on an Exponential(1) baseline, frank copula
//   2: harris marginals on a StretchedExponential(3,2) baseline, clayton
//   3: lomax_exponential marginals, gumbel_hougaard copula
Portfolio reference_portfolio(int which);

}  // namespace minclaim

#endif  // MINCLAIM_EXAMPLES_HPP
