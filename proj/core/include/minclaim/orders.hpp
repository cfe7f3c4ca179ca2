#ifndef MINCLAIM_ORDERS_HPP
#define MINCLAIM_ORDERS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "minclaim/portfolio.hpp"

namespace minclaim {

enum class OrderRelation { St, Hr, Lr };
enum class OrderDirection { ALeqB, BLeqA, Equal, Incomparable, Inconclusive };

const char* relation_name(OrderRelation r);
const char* direction_name(OrderDirection d);
OrderRelation relation_from_name(const std::string& name);

struct Witness {
  double x = 0.0;
  double margin = 0.0;  // how far the defining inequality failed at x
};

struct OrderVerdict {
  OrderRelation relation = OrderRelation::St;
  OrderDirection direction = OrderDirection::Inconclusive;
  std::optional<Witness> witness;           // set when a check failed at a point
  std::map<std::string, std::string> certificate;  // evidence trail
};

// Grid comparison of the two exact survival curves.  A <=st B iff
// survival_A <= survival_B everywhere; crossings yield Incomparable with the
// worst crossing as witness.
OrderVerdict check_st_on_grid(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs);

// Hazard-rate order for PHR marginals under a common Gumbel-Hougaard copula,
// decided from the closed form: A <=hr B iff prod(p_A) <= prod(p_B) and
// sum(lambda_A^theta) >= sum(lambda_B^theta).
OrderVerdict hr_characterization_gumbel_phr(const std::vector<double>& lambda_a,
                                            const std::vector<double>& probs_a,
                                            const std::vector<double>& lambda_b,
                                            const std::vector<double>& probs_b,
                                            double theta);

// Likelihood-ratio order in the same closed-form setting.  With equal claim
// probabilities the order holds only in the degenerate equal-tilt case; with
// equal tilt sums the direction follows the claim probabilities.  Anything
// else is Inconclusive.
OrderVerdict lr_characterization(const std::vector<double>& lambda_a,
                                 const std::vector<double>& probs_a,
                                 const std::vector<double>& lambda_b,
                                 const std::vector<double>& probs_b,
                                 double theta);

// Numeric confirmations for the PHR/Gumbel-Hougaard closed form: hazard-rate
// comparison of the continuous parts plus the atom condition, and
// monotonicity of the density ratio sequence (atom ratio first).
OrderVerdict numeric_hr_check(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs);
OrderVerdict numeric_lr_check(const Portfolio& a, const Portfolio& b,
                              const std::vector<double>& xs);

struct StPrediction {
  OrderVerdict verdict;                // relation St
  std::vector<PremiseCheck> premises;  // checks from both attempted directions
};

// Sufficient conditions for the usual stochastic order: claim probabilities
// dominated termwise in product, tilt vectors weakly supermajorized, copulas
// pointwise ordered on a grid, marginal survival concave increasing in the
// tilt, and the dominating copula Schur-concave.  Both directions are tried;
// Equal means both certified.
StPrediction predict_st_from_premises(const Portfolio& a, const Portfolio& b,
                                      int grid_resolution = 20);

}  // namespace minclaim

#endif  // MINCLAIM_ORDERS_HPP
