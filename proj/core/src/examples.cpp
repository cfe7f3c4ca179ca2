#include "minclaim/examples.hpp"

#include "minclaim/errors.hpp"

namespace minclaim {

Portfolio reference_portfolio(int which) {
  switch (which) {
    case 1:
      return Portfolio::make(
          {3.0, 6.0, 2.0}, {0.5, 0.6, 0.1},
          MarginalSpec::prhr(Baseline::exponential(1.0), 1.0),
          CopulaSpec::frank(5.0, 3));
    case 2:
      return Portfolio::make(
          {3.0, 5.0, 1.0}, {0.2, 0.3, 0.2},
          MarginalSpec::harris(Baseline::stretched_exponential(3.0, 2.0), 1.0,
                               3.0),
          CopulaSpec::clayton(3.0, 3));
    case 3:
      return Portfolio::make(
          {0.7, 5.0, 0.4}, {0.1, 0.2, 0.8},
          MarginalSpec::lomax_exponential(0.1, 3.0, 1.0),
          CopulaSpec::gumbel_hougaard(2.0, 3));
    default:
      throw DomainError("reference_portfolio expects 1, 2, or 3");
  }
}

}  // namespace minclaim
